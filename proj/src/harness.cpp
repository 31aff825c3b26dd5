#include "hamcycle/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "hamcycle/model.hpp"
#include "hamcycle/numeric.hpp"
#include "hamcycle/rng.hpp"

namespace hamcycle {

namespace {

std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

SweepRecord make_record(Vertex n, unsigned k, unsigned ell, double c, double p, std::uint64_t trials,
                        std::uint64_t successes, std::uint64_t seed) {
    const Interval ci = wilson_interval(successes, trials);
    return {n, k, ell, c, p, trials, successes,
            static_cast<double>(successes) / static_cast<double>(trials), ci.low, ci.high, seed};
}

bool hamiltonian_trial(Vertex n, unsigned k, unsigned ell, double p, std::uint64_t seed,
                       const SearchLimits& limits) {
    return has_hamilton(sample({n, k, p, seed}), ell, limits).found;
}

// Runs body(i) for i in [0, count) on up to `jobs` threads. The first
// exception by index is rethrown after the loop, so failures are reported the
// same way regardless of scheduling.
template <class Body>
void parallel_trials(std::uint64_t count, int jobs, Body&& body) {
    std::vector<std::exception_ptr> errors(count);
    const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 4) num_threads(std::max(jobs, 1))
    for (std::int64_t i = 0; i < total; ++i) {
        try {
            body(static_cast<std::uint64_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

void check_estimate_args(Vertex n, unsigned k, unsigned ell, double p, std::uint64_t trials) {
    validate_params(n, k, ell);
    if (!(p >= 0.0 && p <= 1.0)) throw RangeError("p must lie in [0, 1]");
    if (trials < 1) throw RangeError("trials must be at least 1");
}

// successes[g] over the grid; one task per trial.
std::vector<std::uint64_t> run_grid(const SweepSpec& spec, const std::vector<double>& probs, bool parallel) {
    const std::size_t grid = probs.size();
    std::vector<std::uint8_t> hits(spec.trials * grid, 0);
    auto trial = [&](std::uint64_t i) {
        for (std::size_t g = 0; g < grid; ++g) {
            const std::uint64_t seed = trial_seed(spec.seed, spec.coupled ? 0 : g, i);
            hits[i * grid + g] = hamiltonian_trial(spec.n, spec.k, spec.ell, probs[g], seed, spec.limits);
        }
    };
    if (parallel) {
        parallel_trials(spec.trials, spec.jobs, trial);
    } else {
        for (std::uint64_t i = 0; i < spec.trials; ++i) trial(i);
    }
    std::vector<std::uint64_t> successes(grid, 0);
    for (std::uint64_t i = 0; i < spec.trials; ++i) {
        for (std::size_t g = 0; g < grid; ++g) successes[g] += hits[i * grid + g];
    }
    return successes;
}

SweepResult run_sweep(const SweepSpec& spec, bool parallel) {
    validate_sweep(spec);
    std::vector<double> probs;
    for (double c : spec.c_grid) probs.push_back(spec.scaling.probability(c, spec.n));
    const std::vector<std::uint64_t> successes = run_grid(spec, probs, parallel);
    SweepResult out;
    for (std::size_t g = 0; g < probs.size(); ++g) {
        out.records.push_back(make_record(spec.n, spec.k, spec.ell, spec.c_grid[g], probs[g], spec.trials,
                                          successes[g], spec.seed));
    }
    out.crossing = locate_crossing(out.records);
    return out;
}

double logit(double x) { return std::log(x / (1.0 - x)); }

} // namespace

double Scaling::probability(double c, Vertex n) const {
    const double nd = static_cast<double>(n);
    const double factor = log_factor ? std::log(nd) : 1.0;
    return c * factor / std::pow(nd, static_cast<double>(exponent));
}

std::string Scaling::describe() const {
    std::string s = log_factor ? "c*ln(n)/n^" : "c/n^";
    return s + std::to_string(exponent);
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t grid_index, std::uint64_t trial) {
    return mix_seed(base, grid_index, trial);
}

SweepRecord estimate_prob(Vertex n, unsigned k, unsigned ell, double p, std::uint64_t trials,
                          std::uint64_t seed, int jobs, const SearchLimits& limits) {
    check_estimate_args(n, k, ell, p, trials);
    std::vector<std::uint8_t> hits(trials, 0);
    parallel_trials(trials, jobs, [&](std::uint64_t i) {
        hits[i] = hamiltonian_trial(n, k, ell, p, trial_seed(seed, 0, i), limits);
    });
    std::uint64_t successes = 0;
    for (std::uint8_t h : hits) successes += h;
    return make_record(n, k, ell, p, p, trials, successes, seed);
}

SweepRecord estimate_prob_serial(Vertex n, unsigned k, unsigned ell, double p, std::uint64_t trials,
                                 std::uint64_t seed, const SearchLimits& limits) {
    check_estimate_args(n, k, ell, p, trials);
    std::uint64_t successes = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        successes += hamiltonian_trial(n, k, ell, p, trial_seed(seed, 0, i), limits);
    }
    return make_record(n, k, ell, p, p, trials, successes, seed);
}

void validate_sweep(const SweepSpec& spec) {
    validate_params(spec.n, spec.k, spec.ell);
    if (spec.divisor == 0 || spec.n % spec.divisor != 0) {
        throw DivisibilityError("n = " + std::to_string(spec.n) + " is not a multiple of " +
                                std::to_string(spec.divisor) + " as the preset requires");
    }
    if (spec.trials < 1) throw RangeError("trials must be at least 1");
    if (spec.c_grid.empty()) throw RangeError("c grid is empty");
    if (!std::is_sorted(spec.c_grid.begin(), spec.c_grid.end())) {
        throw RangeError("c grid must be ascending");
    }
    for (double c : spec.c_grid) {
        const double p = spec.scaling.probability(c, spec.n);
        if (!(p > 0.0 && p <= 1.0)) {
            throw RangeError("c = " + fmt_double(c) + " implies p = " + fmt_double(p) +
                             " outside (0, 1]");
        }
    }
}

SweepResult sweep(const SweepSpec& spec) { return run_sweep(spec, true); }

SweepResult sweep_serial(const SweepSpec& spec) { return run_sweep(spec, false); }

Crossing locate_crossing(const std::vector<SweepRecord>& records) {
    for (std::size_t j = 0; j < records.size(); ++j) {
        if (records[j].phat < 0.5) continue;
        if (j == 0) return {};
        const SweepRecord& lo = records[j - 1];
        const SweepRecord& hi = records[j];
        if (hi.phat == 0.5) return {true, hi.c};
        auto clamped_logit = [](const SweepRecord& r) {
            const double eps = 0.5 / static_cast<double>(r.trials);
            return logit(std::clamp(r.phat, eps, 1.0 - eps));
        };
        const double l0 = clamped_logit(lo);
        const double l1 = clamped_logit(hi);
        if (l1 <= l0) return {true, hi.c};
        return {true, lo.c + (0.0 - l0) * (hi.c - lo.c) / (l1 - l0)};
    }
    return {};
}

std::vector<PancyclicRecord> pancyclicity_sweep(Vertex n, unsigned k, const std::vector<double>& p_grid,
                                                std::uint64_t trials, std::uint64_t seed, int jobs,
                                                bool coupled, const SearchLimits& limits) {
    if (n < k + 1) throw TooSmallError("pancyclicity needs n >= k + 1");
    if (trials < 1) throw RangeError("trials must be at least 1");
    for (double p : p_grid) {
        if (!(p >= 0.0 && p <= 1.0)) throw RangeError("p must lie in [0, 1]");
    }
    const std::size_t grid = p_grid.size();
    // 0 marks pancyclic, otherwise the first missing length.
    std::vector<Vertex> missing(trials * grid, 0);
    parallel_trials(trials, jobs, [&](std::uint64_t i) {
        for (std::size_t g = 0; g < grid; ++g) {
            const auto h = sample({n, k, p_grid[g], trial_seed(seed, coupled ? 0 : g, i)});
            const PancyclicResult res = is_pancyclic(h, limits);
            missing[i * grid + g] = res.pancyclic ? 0 : *res.first_missing;
        }
    });
    std::vector<PancyclicRecord> out;
    for (std::size_t g = 0; g < grid; ++g) {
        PancyclicRecord rec;
        rec.n = n;
        rec.k = k;
        rec.p = p_grid[g];
        rec.trials = trials;
        rec.seed = seed;
        for (std::uint64_t i = 0; i < trials; ++i) {
            const Vertex r = missing[i * grid + g];
            if (r == 0) {
                ++rec.successes;
            } else {
                ++rec.first_missing[r];
            }
        }
        const Interval ci = wilson_interval(rec.successes, trials);
        rec.phat = static_cast<double>(rec.successes) / static_cast<double>(trials);
        rec.ci_low = ci.low;
        rec.ci_high = ci.high;
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<double> default_c_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 12; ++i) grid.push_back(0.5 * i);
    return grid;
}

SweepSpec preset(const std::string& name, unsigned k, Vertex n, std::optional<unsigned> ell) {
    SweepSpec spec;
    spec.n = n;
    spec.k = k;
    spec.c_grid = default_c_grid();
    spec.preset_name = name;
    if (name == "loose-k3") {
        if (k != 3) throw RangeError("preset loose-k3 needs k = 3");
        spec.ell = 1;
        spec.scaling = {2, true};
        spec.divisor = 4;
    } else if (name == "loose-k") {
        if (k < 4) throw RangeError("preset loose-k needs k >= 4");
        spec.ell = 1;
        spec.scaling = {k - 1, true};
        spec.divisor = 2 * (k - 1);
    } else if (name == "ell2") {
        if (k < 3) throw RangeError("preset ell2 needs k >= 3");
        spec.ell = 2;
        spec.scaling = {k - 2, false};
        spec.divisor = k - 2;
        spec.reference_c = std::exp(static_cast<double>(k - 2));
    } else if (name == "mid-ell") {
        const unsigned l = ell.value_or(3);
        if (l < 3 || l >= k) throw RangeError("preset mid-ell needs 3 <= ell < k");
        spec.ell = l;
        spec.scaling = {k - l, false};
        spec.divisor = k - l;
        spec.reference_c = std::exp(static_cast<double>(k - l));
    } else if (name == "tight") {
        if (k < 3) throw RangeError("preset tight needs k >= 3");
        spec.ell = k - 1;
        spec.scaling = {1, false};
        spec.divisor = 1;
        spec.reference_c = std::exp(1.0);
    } else {
        throw RangeError("unknown preset '" + name + "'");
    }
    return spec;
}

std::string describe_config(const SweepSpec& spec) {
    std::ostringstream os;
    os << "sweep";
    if (!spec.preset_name.empty()) os << " preset=" << spec.preset_name;
    os << " n=" << spec.n << " k=" << spec.k << " ell=" << spec.ell << " p=" << spec.scaling.describe()
       << " divisor=" << spec.divisor << " trials=" << spec.trials << " seed=" << spec.seed
       << " sampling=" << (spec.coupled ? "coupled" : "independent") << " c_grid=";
    for (std::size_t i = 0; i < spec.c_grid.size(); ++i) os << (i ? ";" : "") << fmt_double(spec.c_grid[i]);
    return os.str();
}

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const SweepResult& result) {
    os << "# " << describe_config(spec) << '\n';
    os << kSweepCsvHeader << '\n';
    for (const SweepRecord& r : result.records) {
        os << r.n << ',' << r.k << ',' << r.ell << ',' << fmt_double(r.c) << ',' << fmt_double(r.p) << ','
           << r.trials << ',' << r.successes << ',' << fmt_double(r.phat) << ',' << fmt_double(r.ci_low)
           << ',' << fmt_double(r.ci_high) << ',' << r.seed << '\n';
    }
    os << "# crossing crossed=" << (result.crossing.crossed ? "true" : "false");
    if (result.crossing.crossed) os << " c_half=" << fmt_double(result.crossing.c_half);
    if (spec.reference_c) os << " reference_c=" << fmt_double(*spec.reference_c);
    os << '\n';
}

void write_sweep_json(std::ostream& os, const SweepSpec& spec, const SweepResult& result) {
    nlohmann::ordered_json doc;
    doc["config"] = describe_config(spec);
    auto& rows = doc["records"] = nlohmann::ordered_json::array();
    for (const SweepRecord& r : result.records) {
        rows.push_back({{"n", r.n},
                        {"k", r.k},
                        {"ell", r.ell},
                        {"c", r.c},
                        {"p", r.p},
                        {"trials", r.trials},
                        {"successes", r.successes},
                        {"phat", r.phat},
                        {"ci_low", r.ci_low},
                        {"ci_high", r.ci_high},
                        {"seed", r.seed}});
    }
    doc["crossing"] = {{"crossed", result.crossing.crossed}};
    if (result.crossing.crossed) doc["crossing"]["c_half"] = result.crossing.c_half;
    if (spec.reference_c) doc["crossing"]["reference_c"] = *spec.reference_c;
    os << doc.dump(2) << '\n';
}

void write_pancyclic_csv(std::ostream& os, const std::vector<PancyclicRecord>& records) {
    os << "n,k,p,trials,successes,phat,ci_low,ci_high,seed,first_missing\n";
    for (const PancyclicRecord& r : records) {
        os << r.n << ',' << r.k << ',' << fmt_double(r.p) << ',' << r.trials << ',' << r.successes << ','
           << fmt_double(r.phat) << ',' << fmt_double(r.ci_low) << ',' << fmt_double(r.ci_high) << ','
           << r.seed << ',';
        bool first = true;
        for (const auto& [len, count] : r.first_missing) {
            os << (first ? "" : ";") << len << ':' << count;
            first = false;
        }
        os << '\n';
    }
}

void write_pancyclic_json(std::ostream& os, const std::vector<PancyclicRecord>& records) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const PancyclicRecord& r : records) {
        nlohmann::ordered_json hist = nlohmann::ordered_json::object();
        for (const auto& [len, count] : r.first_missing) hist[std::to_string(len)] = count;
        doc.push_back({{"n", r.n},
                       {"k", r.k},
                       {"p", r.p},
                       {"trials", r.trials},
                       {"successes", r.successes},
                       {"phat", r.phat},
                       {"ci_low", r.ci_low},
                       {"ci_high", r.ci_high},
                       {"seed", r.seed},
                       {"first_missing", hist}});
    }
    os << doc.dump(2) << '\n';
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInputError("cannot open " + tmp.string() + " for writing");
        out << contents;
        out.flush();
        if (!out) throw InvalidInputError("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw InvalidInputError("cannot rename onto " + path + ": " + ec.message());
    }
}

} // namespace hamcycle
