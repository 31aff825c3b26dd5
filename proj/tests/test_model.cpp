#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "hamcycle/model.hpp"
#include "hamcycle/numeric.hpp"
#include "hamcycle/rng.hpp"

using namespace hamcycle;

namespace {

struct Moments {
    double mean;
    double variance;
};

Moments edge_count_moments(bool sparse, Vertex n, unsigned k, double p, int seeds) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int s = 0; s < seeds; ++s) {
        const ModelSpec spec{n, k, p, static_cast<std::uint64_t>(s)};
        const auto m = static_cast<double>((sparse ? sample_sparse(spec) : sample(spec)).edge_count());
        sum += m;
        sum_sq += m * m;
    }
    const double mean = sum / seeds;
    return {mean, (sum_sq - seeds * mean * mean) / (seeds - 1)};
}

// Per-edge inclusion counts over `seeds` draws, then the chi-square statistic
// against Binomial(seeds, p) for each of the C(n, k) edges.
double inclusion_chi_square(bool sparse, Vertex n, unsigned k, double p, int seeds) {
    const std::uint64_t total = *binomial(n, k);
    std::vector<double> hits(total, 0.0);
    for (int s = 0; s < seeds; ++s) {
        const ModelSpec spec{n, k, p, 1000000u + static_cast<std::uint64_t>(s)};
        const HypergraphInstance h = sparse ? sample_sparse(spec) : sample(spec);
        for (std::uint64_t r : h.ranks()) hits[r] += 1.0;
    }
    const double expected = seeds * p;
    const double var = seeds * p * (1.0 - p);
    double chi = 0.0;
    for (double h : hits) chi += (h - expected) * (h - expected) / var;
    return chi;
}

} // namespace

TEST_SUITE("model") {

TEST_CASE("xoshiro256** reference stream") {
    // First outputs for seed 0; the state is four SplitMix64(0) outputs.
    SplitMix64 sm(0);
    CHECK(sm.next() == 0xe220a8397b1dcdafULL);
    CHECK(sm.next() == 0x6e789e6aa1b965f4ULL);
    Xoshiro256 rng(0);
    const std::uint64_t first = rng();
    Xoshiro256 again(0);
    CHECK(again() == first);
    CHECK(first == 0x99ec5f36cb75f2b4ULL);
}

TEST_CASE("sample extremes and determinism") {
    CHECK(sample({9, 3, 0.0, 1}).edge_count() == 0);
    CHECK(sample({9, 3, 1.0, 1}).edge_count() == 84);
    CHECK(sample({9, 3, 1.0, 1}) == HypergraphInstance::complete(9, 3));
    CHECK(sample({12, 4, 0.3, 99}) == sample({12, 4, 0.3, 99}));
    CHECK_FALSE(sample({12, 4, 0.3, 99}) == sample({12, 4, 0.3, 100}));
    CHECK_THROWS_AS(sample({3, 4, 0.5, 1}), RangeError);
    CHECK_THROWS_AS(sample({6, 3, 1.5, 1}), RangeError);
    CHECK_THROWS_AS(sample({6, 3, -0.1, 1}), RangeError);
}

TEST_CASE("sample: frozen edge set") {
    // Computed by an independent reimplementation of the documented stream:
    // xoshiro256** seeded with SplitMix64(42), one uniform per colex rank.
    const auto h = sample({7, 3, 0.5, 42});
    const std::vector<std::uint64_t> ranks(h.ranks().begin(), h.ranks().end());
    CHECK(ranks == std::vector<std::uint64_t>{0, 1, 11, 13, 20, 21, 22, 24, 25, 26, 29, 30});
}

TEST_CASE("sample: coupled across p") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto lo = sample({10, 3, 0.2, seed});
        const auto hi = sample({10, 3, 0.6, seed});
        CHECK(std::includes(hi.ranks().begin(), hi.ranks().end(), lo.ranks().begin(), lo.ranks().end()));
    }
}

TEST_CASE("sample: mean edge count at n=20, k=3, p=0.1") {
    const Moments m = edge_count_moments(false, 20, 3, 0.1, 5000);
    const double se = std::sqrt(m.variance / 5000.0);
    CHECK(std::abs(m.mean - 114.0) <= 3.0 * se);
    // Binomial(1140, 0.1) variance is 102.6.
    CHECK(m.variance == doctest::Approx(102.6).epsilon(0.1));
}

TEST_CASE("sample_sparse: extremes, determinism, overflow") {
    CHECK(sample_sparse({30, 4, 0.0, 3}).edge_count() == 0);
    CHECK(sample_sparse({8, 3, 1.0, 3}) == HypergraphInstance::complete(8, 3));
    CHECK(sample_sparse({40, 5, 0.001, 3}) == sample_sparse({40, 5, 0.001, 3}));
    CHECK_THROWS_AS(sample_sparse({200, 100, 0.1, 3}), CapacityError);
    // Large universes: C(1000, 4) = 41417124750, mean 4141.71, sd about 64.4.
    const auto big = sample_sparse({1000, 4, 1e-7, 8});
    CHECK(std::abs(static_cast<double>(big.edge_count()) - 4141.71) < 5.0 * 64.4);
}

TEST_CASE("sample_sparse: mean edge count at n=30, k=4, p=10/C(30,4)") {
    const double p = 10.0 / 27405.0;
    const Moments m = edge_count_moments(true, 30, 4, p, 5000);
    const double se = std::sqrt(m.variance / 5000.0);
    CHECK(std::abs(m.mean - 10.0) <= 3.0 * se);
}

TEST_CASE("per-edge inclusion frequencies pass chi-square at 0.01") {
    // 56 edges at n=8, k=3.
    const boost::math::chi_squared dist(56);
    const double critical = boost::math::quantile(boost::math::complement(dist, 0.01));
    CHECK(inclusion_chi_square(false, 8, 3, 0.2, 20000) < critical);
    CHECK(inclusion_chi_square(true, 8, 3, 0.2, 20000) < critical);
}

TEST_CASE("sample and sample_sparse agree in distribution") {
    // Two-sample Kolmogorov-Smirnov on edge counts at n=8, k=3, p=0.3.
    constexpr int seeds = 4000;
    std::vector<std::size_t> dense;
    std::vector<std::size_t> sparse;
    for (int s = 0; s < seeds; ++s) {
        dense.push_back(sample({8, 3, 0.3, static_cast<std::uint64_t>(s)}).edge_count());
        sparse.push_back(sample_sparse({8, 3, 0.3, 500000u + static_cast<std::uint64_t>(s)}).edge_count());
    }
    std::sort(dense.begin(), dense.end());
    std::sort(sparse.begin(), sparse.end());
    double ks = 0.0;
    for (std::size_t x = 0; x <= 56; ++x) {
        const double fd = static_cast<double>(std::upper_bound(dense.begin(), dense.end(), x) - dense.begin()) / seeds;
        const double fs = static_cast<double>(std::upper_bound(sparse.begin(), sparse.end(), x) - sparse.begin()) / seeds;
        ks = std::max(ks, std::abs(fd - fs));
    }
    // alpha = 0.01 critical value c(alpha) sqrt((n1 + n2) / (n1 n2)), c = 1.628.
    CHECK(ks < 1.628 * std::sqrt(2.0 / seeds));
}

TEST_CASE("binomial_inversion matches the exact CDF") {
    for (auto [trials, p] : {std::pair<std::uint64_t, double>{10, 0.3}, {57, 0.05}, {400, 0.5}, {3000, 0.9}}) {
        const boost::math::binomial_distribution<double> dist(static_cast<double>(trials), p);
        for (std::uint64_t j = 0; j < trials; ++j) {
            const double cdf = boost::math::cdf(dist, static_cast<double>(j));
            const double here = boost::math::pdf(dist, static_cast<double>(j));
            const double next = boost::math::pdf(dist, static_cast<double>(j + 1));
            if (here < 1e-8 || next < 1e-8) continue;
            CHECK(binomial_inversion(trials, p, cdf - 1e-10) == j);
            CHECK(binomial_inversion(trials, p, cdf + 1e-10) == j + 1);
        }
    }
    CHECK(binomial_inversion(100, 0.0, 0.7) == 0);
    CHECK(binomial_inversion(100, 1.0, 0.2) == 100);
}

}
