#pragma once

#include <cstdint>

#include "hamcycle/core.hpp"

namespace hamcycle {

// H(n, p, k): every k-subset of [n] is an edge independently with probability p.
struct ModelSpec {
    Vertex n = 0;
    unsigned k = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
};

// Draws one Xoshiro256(seed) uniform per k-subset in colex rank order and keeps
// rank r iff u_r < p. Consequently two specs differing only in p are coupled:
// the edge set at the smaller p is a subset of the one at the larger p.
HypergraphInstance sample(const ModelSpec& spec);

// Same distribution as sample(), in O(p C(n, k)) expected time: draws the edge
// count M ~ Binomial(C(n, k), p) by inversion, then M distinct ranks uniformly
// by rejection (Xoshiro256::below). The random stream differs from sample().
HypergraphInstance sample_sparse(const ModelSpec& spec);

// Validates 0 <= p <= 1 and 2 <= k <= n; throws RangeError otherwise.
void validate_spec(const ModelSpec& spec);

// Binomial(trials, p) by inversion of one uniform; exposed for testing.
std::uint64_t binomial_inversion(std::uint64_t trials, double p, double u);

} // namespace hamcycle
