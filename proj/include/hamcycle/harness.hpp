#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hamcycle/core.hpp"
#include "hamcycle/search.hpp"

namespace hamcycle {

// p = c * (ln n if log_factor) / n^exponent.
struct Scaling {
    unsigned exponent = 1;
    bool log_factor = false;

    double probability(double c, Vertex n) const;
    std::string describe() const;
};

struct SweepSpec {
    Vertex n = 0;
    unsigned k = 0;
    unsigned ell = 0;
    std::vector<double> c_grid; // ascending
    Scaling scaling;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    int jobs = 1;
    // Coupled sampling reuses one uniform per edge across the grid for a given
    // trial, so success is monotone in c trial by trial.
    bool coupled = true;
    // Divisibility the row of the summary table asks for (may exceed k - ell).
    Vertex divisor = 1;
    // Asymptotic reference constant for c, reported but never asserted.
    std::optional<double> reference_c;
    std::string preset_name;
    SearchLimits limits;
};

struct SweepRecord {
    Vertex n = 0;
    unsigned k = 0;
    unsigned ell = 0;
    double c = 0.0;
    double p = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double phat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

struct Crossing {
    bool crossed = false;
    double c_half = 0.0;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    Crossing crossing;
};

// Seed of trial i at grid point g. Coupled sweeps use g = 0 everywhere.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t grid_index, std::uint64_t trial);

// Fraction of `trials` samples of H(n, p, k) that are ell-Hamiltonian, with a
// Wilson 95% interval. Trial i samples with trial_seed(seed, 0, i). The record's
// c equals p. Parallel over trials with at most `jobs` threads.
SweepRecord estimate_prob(Vertex n, unsigned k, unsigned ell, double p, std::uint64_t trials,
                          std::uint64_t seed, int jobs = 1, const SearchLimits& limits = {});
SweepRecord estimate_prob_serial(Vertex n, unsigned k, unsigned ell, double p, std::uint64_t trials,
                                 std::uint64_t seed, const SearchLimits& limits = {});

// Checks parameters, divisibility, trials >= 1, an ascending grid and every
// implied p in (0, 1].
void validate_sweep(const SweepSpec& spec);

SweepResult sweep(const SweepSpec& spec);
SweepResult sweep_serial(const SweepSpec& spec);

// Interpolates c linearly against logit(phat) between the last point below 1/2
// and the first at or above it. phat is clamped to [1/(2T), 1 - 1/(2T)] before
// the logit. Not crossed when the first point is already >= 1/2 or no point
// reaches 1/2.
Crossing locate_crossing(const std::vector<SweepRecord>& records);

struct PancyclicRecord {
    Vertex n = 0;
    unsigned k = 0;
    double p = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double phat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;
    std::map<Vertex, std::uint64_t> first_missing; // r -> count among failures

    friend bool operator==(const PancyclicRecord&, const PancyclicRecord&) = default;
};

std::vector<PancyclicRecord> pancyclicity_sweep(Vertex n, unsigned k, const std::vector<double>& p_grid,
                                                std::uint64_t trials, std::uint64_t seed, int jobs = 1,
                                                bool coupled = true, const SearchLimits& limits = {});

// Rows of the summary table of known thresholds:
//   loose-k3  ell = 1, k = 3,  p = c ln n / n^2,        4 | n
//   loose-k   ell = 1, k >= 4, p = c ln n / n^{k-1},    2(k-1) | n
//   ell2      ell = 2,         p = c / n^{k-2},         (k-2) | n
//   mid-ell   3 <= ell < k,    p = c / n^{k-ell},       (k-ell) | n
//   tight     ell = k-1,       p = c / n, reference e,  no requirement
// The default grid is c = 0.5, 1.0, ..., 6.0. `ell` only applies to mid-ell
// (default 3). Throws RangeError for an unknown name or unsuitable k.
SweepSpec preset(const std::string& name, unsigned k, Vertex n, std::optional<unsigned> ell = {});

// Every point of the default preset grid.
std::vector<double> default_c_grid();

// One line, no job count: identical for any degree of parallelism.
std::string describe_config(const SweepSpec& spec);

inline constexpr const char* kSweepCsvHeader = "n,k,ell,c,p,trials,successes,phat,ci_low,ci_high,seed";

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const SweepResult& result);
void write_sweep_json(std::ostream& os, const SweepSpec& spec, const SweepResult& result);
void write_pancyclic_csv(std::ostream& os, const std::vector<PancyclicRecord>& records);
void write_pancyclic_json(std::ostream& os, const std::vector<PancyclicRecord>& records);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

} // namespace hamcycle
