#include "hamcycle/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hamcycle {

namespace {

using BinomialTable = std::array<std::array<std::uint64_t, 65>, 65>;

BinomialTable make_binomial_table() {
    BinomialTable t{};
    for (unsigned n = 0; n <= 64; ++n) {
        t[n][0] = 1;
        for (unsigned k = 1; k <= n; ++k) {
            t[n][k] = t[n - 1][k - 1] + (k <= n - 1 ? t[n - 1][k] : 0);
        }
    }
    return t;
}

const BinomialTable& binomial_table() {
    static const BinomialTable table = make_binomial_table();
    return table;
}

} // namespace

std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    // acc * (n - k + i) / i stays integral at every step.
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t small_binomial(unsigned n, unsigned k) {
    if (n > 64 || k > n) return 0;
    return binomial_table()[n][k];
}

double log_factorial(double n) { return std::lgamma(n + 1.0); }

double log_choose(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double log_sum_exp(std::span<const double> terms) {
    double peak = -std::numeric_limits<double>::infinity();
    for (double x : terms) peak = std::max(peak, x);
    if (!std::isfinite(peak)) return peak;
    double acc = 0.0;
    for (double x : terms) acc += std::exp(x - peak);
    return peak + std::log(acc);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: zero trials");
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    // Clamp so the bounds bracket phat exactly at 0 and 1 despite rounding.
    return {std::clamp(centre - half, 0.0, phat), std::clamp(centre + half, phat, 1.0)};
}

} // namespace hamcycle
