#include "hamcycle/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "hamcycle/numeric.hpp"

namespace hamcycle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw RangeError("p must lie in [0, 1]");
}

void check_nba_capacity(const CycleParams& params) {
    if (params.n > kNbaMaxVertices) {
        throw CapacityError("brute-force profile tables need n <= " + std::to_string(kNbaMaxVertices));
    }
}

Permutation identity(Vertex n) {
    Permutation pi(n);
    std::iota(pi.begin(), pi.end(), Vertex{1});
    return pi;
}

void check_reference(const CycleParams& params, const Permutation& reference) {
    // Throws InvalidInputError unless reference permutes [n].
    hamperm_edges(reference, params);
}

// Window masks of a sequence of 1-based labels, bit v-1 for label v.
void window_masks(const CycleParams& params, const Vertex* pi, std::uint32_t* out) {
    for (std::size_t i = 0; i < params.m; ++i) {
        std::uint32_t bits = 0;
        for (unsigned j = 0; j < params.k; ++j) {
            bits |= std::uint32_t{1} << (pi[(i * params.shift() + j) % params.n] - 1);
        }
        out[i] = bits;
    }
}

// Tallies profiles of all permutations whose first label is `first`.
NbaTable tally_first_label(const CycleParams& params, const Permutation& reference, Vertex first) {
    NbaTable local{params, {}, 0};
    std::array<std::uint32_t, 16> ref_masks{};
    window_masks(params, reference.data(), ref_masks.data());
    // Reference windows are distinct sets, so a mask names at most one slot.
    std::vector<int> slot_of(std::size_t{1} << params.n, -1);
    for (std::size_t i = 0; i < params.m; ++i) slot_of[ref_masks[i]] = static_cast<int>(i);

    Permutation pi;
    pi.push_back(first);
    for (Vertex v = 1; v <= params.n; ++v) {
        if (v != first) pi.push_back(v);
    }
    std::array<std::uint32_t, 16> masks{};
    std::array<bool, 16> shared{};
    do {
        window_masks(params, pi.data(), masks.data());
        shared.fill(false);
        std::size_t b = 0;
        for (std::size_t i = 0; i < params.m; ++i) {
            const int slot = slot_of[masks[i]];
            if (slot >= 0) {
                shared[static_cast<std::size_t>(slot)] = true;
                ++b;
            }
        }
        if (b == 0) {
            ++local.zero_count;
            continue;
        }
        std::size_t a = 0;
        if (b == params.m) {
            a = 1;
        } else {
            for (std::size_t i = 0; i < params.m; ++i) {
                if (shared[i] && !shared[(i + params.m - 1) % params.m]) ++a;
            }
        }
        ++local.counts[{b, a}];
    } while (std::next_permutation(pi.begin() + 1, pi.end()));
    return local;
}

} // namespace

double log_expected_hamperms(std::int64_t n, std::int64_t k, std::int64_t ell, double p) {
    const CycleParams params = validate_params(n, k, ell);
    check_probability(p);
    if (p == 0.0) return -kInf;
    return log_factorial(static_cast<double>(params.n)) + static_cast<double>(params.m) * std::log(p);
}

double log_expected_tight_cycles(std::int64_t n, std::int64_t k, std::int64_t r, double p) {
    if (k < 2) throw RangeError("k must be at least 2");
    if (r < k + 1 || r > n) throw RangeError("cycle length r must lie in [k+1, n]");
    check_probability(p);
    if (p == 0.0) return -kInf;
    const auto nd = static_cast<double>(n);
    const auto rd = static_cast<double>(r);
    return log_choose(nd, rd) + log_factorial(rd - 1.0) - std::log(2.0) + rd * std::log(p);
}

double threshold_constant(unsigned k) {
    if (k < 3) throw RangeError("threshold constant defined for k >= 3");
    double factorial = 1.0;
    for (unsigned i = 2; i <= k; ++i) factorial *= i;
    return 4.0 * factorial * k * std::exp(static_cast<double>(k));
}

std::uint64_t NbaTable::total() const {
    std::uint64_t sum = zero_count;
    for (const auto& [cell, count] : counts) sum += count;
    return sum;
}

std::uint64_t NbaTable::at(std::size_t b, std::size_t a) const {
    if (b == 0 && a == 0) return zero_count;
    auto it = counts.find({b, a});
    return it == counts.end() ? 0 : it->second;
}

NbaTable brute_force_nba(const CycleParams& params) { return brute_force_nba(params, identity(params.n)); }

NbaTable brute_force_nba(const CycleParams& params, const Permutation& reference) {
    check_nba_capacity(params);
    check_reference(params, reference);
    std::vector<NbaTable> partial(params.n);
#pragma omp parallel for schedule(dynamic, 1)
    for (int first = 1; first <= static_cast<int>(params.n); ++first) {
        partial[first - 1] = tally_first_label(params, reference, static_cast<Vertex>(first));
    }
    NbaTable table{params, {}, 0};
    for (const NbaTable& part : partial) {
        table.zero_count += part.zero_count;
        for (const auto& [cell, count] : part.counts) table.counts[cell] += count;
    }
    return table;
}

NbaTable brute_force_nba_serial(const CycleParams& params, const Permutation& reference) {
    check_nba_capacity(params);
    const Hamperm ref(reference, params);
    NbaTable table{params, {}, 0};
    Permutation pi = identity(params.n);
    do {
        const IntersectionProfile prof = intersection_profile(ref, Hamperm(pi, params));
        if (prof.b == 0) {
            ++table.zero_count;
        } else {
            ++table.counts[{prof.b, prof.a}];
        }
    } while (std::next_permutation(pi.begin(), pi.end()));
    return table;
}

LogBound bound_nba_basic(const CycleParams& params, std::size_t b, std::size_t a) {
    if (a < 1 || a > b || b > params.m) throw RangeError("bound_nba_basic needs 1 <= a <= b <= m");
    const auto rest = static_cast<std::int64_t>(params.n) -
                      static_cast<std::int64_t>(b * params.shift()) -
                      static_cast<std::int64_t>(a * params.ell);
    if (rest < 0) return {kInf, false};
    const double k_fact = std::exp(log_factorial(params.k));
    return {2.0 * static_cast<double>(a) * std::log(static_cast<double>(params.n)) +
                static_cast<double>(b) * std::log(2.0 * k_fact * params.k) +
                log_factorial(static_cast<double>(rest)),
            true};
}

LogBound bound_nba_refined(std::int64_t n, std::int64_t k, std::size_t b, std::size_t a) {
    if (k < 2) throw RangeError("k must be at least 2");
    if (a < 1 || a > b || static_cast<std::int64_t>(b) > n) {
        throw RangeError("bound_nba_refined needs 1 <= a <= b <= n");
    }
    const std::int64_t top = n - static_cast<std::int64_t>(b) - static_cast<std::int64_t>(a) * (k - 1);
    if (top < 0) return {kInf, false};
    const double ln2 = std::log(2.0);
    const double ln_k_fact = log_factorial(static_cast<double>(k));
    const auto ad = static_cast<double>(a);
    // Terms with t > top have negative factorial arguments and are dropped.
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(top) + 1);
    for (std::int64_t t = 0; t <= top; ++t) {
        const auto td = static_cast<double>(t);
        terms.push_back((td + ad) * ln2 + log_factorial(static_cast<double>(top - t)) +
                        (ad + td) * ln_k_fact);
    }
    return {2.0 * ad * std::log(static_cast<double>(n)) +
                log_choose(static_cast<double>(b) - 1.0, ad - 1.0) + log_sum_exp(terms),
            true};
}

EndRatioTerm end_ratio_term(const CycleParams& params, double p, std::size_t b, std::size_t a) {
    if (!(p > 0.0 && p <= 1.0)) throw RangeError("p must lie in (0, 1]");
    LogBound basic = bound_nba_basic(params, b, a);
    const double log_ex = log_expected_hamperms(params.n, params.k, params.ell, p);
    if (basic.defined) {
        basic.value += static_cast<double>(params.m - b) * std::log(p) - log_ex;
    }
    const double k_fact = std::exp(log_factorial(params.k));
    const double ln_n = std::log(static_cast<double>(params.n));
    const double closed =
        static_cast<double>(b) * (std::log(2.0 * k_fact * params.k) + params.k -
                                  params.shift() * ln_n - std::log(p)) -
        static_cast<double>(a) * (static_cast<double>(params.ell) - 2.0) * ln_n;
    return {basic, closed};
}

MomentReport exact_second_moment(const NbaTable& table, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw RangeError("p must lie in (0, 1]");
    const CycleParams& params = table.params;
    const double n_fact = std::exp(log_factorial(params.n));
    const double ln_p = std::log(p);
    // E(X^2)/E(X)^2 = sum_b N_b p^{-b} / n!, and sum_b N_b = n!.
    double excess = 0.0;
    for (const auto& [cell, count] : table.counts) {
        excess += static_cast<double>(count) * std::expm1(-static_cast<double>(cell.first) * ln_p);
    }
    MomentReport report;
    report.ratio_minus_one = excess / n_fact;
    report.log_ex = log_factorial(params.n) + static_cast<double>(params.m) * ln_p;
    report.log_ex2 = 2.0 * report.log_ex + std::log1p(report.ratio_minus_one);
    return report;
}

MomentReport exact_second_moment(const CycleParams& params, double p) {
    return exact_second_moment(brute_force_nba(params), p);
}

} // namespace hamcycle
