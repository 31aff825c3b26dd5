#include "hamcycle/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "hamcycle/numeric.hpp"
#include "hamcycle/rng.hpp"

namespace hamcycle {

namespace {

// Dense sampling touches every k-subset once.
constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 32;

std::uint64_t edge_universe(const ModelSpec& spec) {
    auto total = binomial(spec.n, spec.k);
    if (!total) throw CapacityError("C(n, k) does not fit in 64 bits");
    return *total;
}

} // namespace

void validate_spec(const ModelSpec& spec) {
    if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
        throw RangeError("edge probability p must lie in [0, 1]");
    }
    if (spec.k < 2) throw RangeError("k must be at least 2");
    if (spec.k > spec.n) {
        throw RangeError("k = " + std::to_string(spec.k) + " exceeds n = " + std::to_string(spec.n));
    }
}

HypergraphInstance sample(const ModelSpec& spec) {
    validate_spec(spec);
    const std::uint64_t total = edge_universe(spec);
    if (total > kDenseLimit) throw CapacityError("C(n, k) too large for dense sampling");
    Xoshiro256 rng(spec.seed);
    std::vector<std::uint64_t> ranks;
    ranks.reserve(static_cast<std::size_t>(spec.p * static_cast<double>(total) * 1.1) + 16);
    for (std::uint64_t r = 0; r < total; ++r) {
        if (rng.uniform() < spec.p) ranks.push_back(r);
    }
    return HypergraphInstance::from_ranks(spec.n, spec.k, std::move(ranks));
}

std::uint64_t binomial_inversion(std::uint64_t trials, double p, double u) {
    if (p <= 0.0 || trials == 0) return 0;
    if (p >= 1.0) return trials;
    const double n = static_cast<double>(trials);
    const double odds = p / (1.0 - p);
    const auto mode = static_cast<std::uint64_t>(std::min(n, std::floor((n + 1.0) * p)));

    // pmf relative to pmf(mode) = 1, walked outward until negligible.
    constexpr double kNegligible = 1e-20;
    std::vector<double> below; // below[i] = pmf(mode - 1 - i)
    double term = 1.0;
    for (std::uint64_t j = mode; j > 0; --j) {
        term *= static_cast<double>(j) / (n - static_cast<double>(j) + 1.0) / odds;
        if (term < kNegligible) break;
        below.push_back(term);
    }
    std::vector<double> above; // above[i] = pmf(mode + 1 + i)
    term = 1.0;
    for (std::uint64_t j = mode; j < trials; ++j) {
        term *= (n - static_cast<double>(j)) / (static_cast<double>(j) + 1.0) * odds;
        if (term < kNegligible) break;
        above.push_back(term);
    }

    double total = 1.0;
    for (double t : below) total += t;
    for (double t : above) total += t;
    const double target = u * total;

    double acc = 0.0;
    for (std::size_t i = below.size(); i-- > 0;) {
        acc += below[i];
        if (target < acc) return mode - 1 - i;
    }
    acc += 1.0;
    if (target < acc) return mode;
    for (std::size_t i = 0; i < above.size(); ++i) {
        acc += above[i];
        if (target < acc) return mode + 1 + i;
    }
    return mode + above.size();
}

HypergraphInstance sample_sparse(const ModelSpec& spec) {
    validate_spec(spec);
    const std::uint64_t total = edge_universe(spec);
    Xoshiro256 rng(spec.seed);
    const std::uint64_t count = binomial_inversion(total, spec.p, rng.uniform());

    // Draw the smaller of the chosen set and its complement.
    const bool complement = count > total / 2;
    const std::uint64_t draws = complement ? total - count : count;
    if (complement && total > kDenseLimit) throw CapacityError("C(n, k) too large to complement");

    std::unordered_set<std::uint64_t> picked;
    picked.reserve(static_cast<std::size_t>(draws));
    while (picked.size() < draws) picked.insert(rng.below(total));

    std::vector<std::uint64_t> ranks;
    if (complement) {
        ranks.reserve(static_cast<std::size_t>(count));
        for (std::uint64_t r = 0; r < total; ++r) {
            if (!picked.contains(r)) ranks.push_back(r);
        }
    } else {
        ranks.assign(picked.begin(), picked.end());
    }
    return HypergraphInstance::from_ranks(spec.n, spec.k, std::move(ranks));
}

} // namespace hamcycle
