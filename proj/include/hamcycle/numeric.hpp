#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace hamcycle {

// C(n, k) when it fits in 64 bits, std::nullopt on overflow.
std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k);

// Table lookup for n, k <= 64. C(64, 32) < 2^63 so every entry fits.
std::uint64_t small_binomial(unsigned n, unsigned k);

// ln(n!) via lgamma.
double log_factorial(double n);

// ln C(n, k), 0 <= k <= n.
double log_choose(double n, double k);

// ln(sum exp(x_i)); -inf for an empty range or when every term is -inf.
double log_sum_exp(std::span<const double> terms);

struct Interval {
    double low;
    double high;
};

inline constexpr double kZ95 = 1.959963984540054;

// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

} // namespace hamcycle
