#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "hamcycle/core.hpp"

namespace hamcycle {

// Moment formulas live in natural-log space; factorials go through lgamma.

// ln E(X) = ln n! + (n / (k - ell)) ln p. Returns -inf for p = 0.
double log_expected_hamperms(std::int64_t n, std::int64_t k, std::int64_t ell, double p);

// ln E(X_r) = ln C(n, r) + ln((r-1)!/2) + r ln p for tight cycles of length r.
double log_expected_tight_cycles(std::int64_t n, std::int64_t k, std::int64_t r, double p);

// 4 k! k e^k.
double threshold_constant(unsigned k);

// Profile counts of all n! permutations against one reference hamperm.
struct NbaTable {
    CycleParams params;
    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> counts; // (b, a) -> count, b >= 1
    std::uint64_t zero_count = 0;                                         // b = 0

    std::uint64_t total() const;
    std::uint64_t at(std::size_t b, std::size_t a) const;

    friend bool operator==(const NbaTable&, const NbaTable&) = default;
};

inline constexpr Vertex kNbaMaxVertices = 9;

// Enumerates S_n against the identity (or `reference`). The OpenMP version
// splits work by the first label; both produce identical tables.
NbaTable brute_force_nba(const CycleParams& params);
NbaTable brute_force_nba(const CycleParams& params, const Permutation& reference);
NbaTable brute_force_nba_serial(const CycleParams& params, const Permutation& reference);

// A log-space bound that may be undefined: when a factorial argument is
// negative the value is +inf and `defined` is false.
struct LogBound {
    double value;
    bool defined;
};

// ln[n^{2a} (2 k! k)^b (n - b(k-ell) - a ell)!]; requires 1 <= a <= b <= m.
LogBound bound_nba_basic(const CycleParams& params, std::size_t b, std::size_t a);

// Tight case: ln[n^{2a} C(b-1, a-1) sum_{t=0}^{T} 2^{t+a} (T - t)! (k!)^{a+t}]
// with T = n - b - a(k-1); requires 1 <= a <= b <= n.
LogBound bound_nba_refined(std::int64_t n, std::int64_t k, std::size_t b, std::size_t a);

// Per-cell term of the variance sum, N(b,a) p^{m-b} / E(X), bounded through
// bound_nba_basic (log of the bound), next to the closed form
// b ln(2 k! k e^k / (n^{k-ell} p)) - a (ell - 2) ln n that it is estimated by
// (dropping the Stirling 1 + o(1) factor).
struct EndRatioTerm {
    LogBound via_basic;
    double closed_form;
};
EndRatioTerm end_ratio_term(const CycleParams& params, double p, std::size_t b, std::size_t a);

struct MomentReport {
    double log_ex;          // ln E(X)
    double log_ex2;         // ln E(X^2)
    double ratio_minus_one; // E(X^2)/E(X)^2 - 1, the Chebyshev bound on Pr(X = 0)
};

// Exact second moment from a brute-force profile table; 0 < p <= 1.
MomentReport exact_second_moment(const NbaTable& table, double p);
MomentReport exact_second_moment(const CycleParams& params, double p);

} // namespace hamcycle
