#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hamcycle/errors.hpp"

namespace hamcycle {

// Vertex labels are 1-based, matching [n] = {1, ..., n}.
using Vertex = std::uint32_t;
using Permutation = std::vector<Vertex>;

// A k-subset of [n], stored ascending. Ordering is colexicographic, so sorting
// Edges agrees with sorting their colex ranks.
class Edge {
public:
    Edge() = default;

    std::span<const Vertex> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    Vertex max_label() const { return vertices_.empty() ? 0 : vertices_.back(); }

    // Colex rank among k-subsets of {1, 2, ...}; throws CapacityError when the
    // rank does not fit in 64 bits.
    std::uint64_t colex_rank() const;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend std::strong_ordering operator<=>(const Edge& a, const Edge& b);

private:
    friend Edge canonicalize_edge(std::span<const Vertex>, Vertex);
    friend Edge unrank_edge(std::uint64_t, unsigned);
    explicit Edge(std::vector<Vertex> sorted) : vertices_(std::move(sorted)) {}

    std::vector<Vertex> vertices_;
};

// Sorts `labels` into an Edge. Throws InvalidInputError on duplicates or a
// label outside [1, n].
Edge canonicalize_edge(std::span<const Vertex> labels, Vertex n);

// Inverse of Edge::colex_rank for k-subsets.
Edge unrank_edge(std::uint64_t rank, unsigned k);

// Colex rank of a vertex bitmask (bit v-1 set for label v). Labels <= 64.
std::uint64_t mask_colex_rank(std::uint64_t mask);

std::ostream& operator<<(std::ostream& os, const Edge& e);

class HypergraphInstance {
public:
    // Validates every edge (size k, labels in [1, n]) and rejects duplicates.
    HypergraphInstance(Vertex n, unsigned k, std::vector<Edge> edges);

    // Builds from colex ranks < C(n, k); duplicates are rejected.
    static HypergraphInstance from_ranks(Vertex n, unsigned k, std::vector<std::uint64_t> ranks);

    static HypergraphInstance empty(Vertex n, unsigned k);
    static HypergraphInstance complete(Vertex n, unsigned k);

    Vertex n() const { return n_; }
    unsigned k() const { return k_; }
    std::size_t edge_count() const { return ranks_.size(); }

    // Sorted ascending; equivalently the edges in colex order.
    std::span<const std::uint64_t> ranks() const { return ranks_; }
    std::vector<Edge> edges() const;

    bool contains(const Edge& e) const;
    bool contains_rank(std::uint64_t rank) const;

    // Membership for a vertex bitmask; valid when n <= 64. Masks whose
    // popcount differs from k are never edges.
    bool contains_mask(std::uint64_t mask) const;

    friend bool operator==(const HypergraphInstance& a, const HypergraphInstance& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.ranks_ == b.ranks_;
    }

private:
    HypergraphInstance(Vertex n, unsigned k, std::vector<std::uint64_t> sorted_ranks, bool);
    void build_bitmap();

    Vertex n_;
    unsigned k_;
    std::vector<std::uint64_t> ranks_;
    // Dense membership bitmap over all C(n, k) ranks, built when small enough.
    std::vector<std::uint64_t> bitmap_;
};

// Text format: "n k" on the first line, then one edge per line as
// space-separated ascending 1-based labels, edges in colex order. The reader
// skips blank lines and lines starting with '#'.
void write_hypergraph(std::ostream& os, const HypergraphInstance& h);
HypergraphInstance read_hypergraph(std::istream& is);

struct CycleParams {
    Vertex n;
    unsigned k;
    unsigned ell;
    std::size_t m; // number of edges, n / (k - ell)

    unsigned shift() const { return k - ell; }
    bool tight() const { return ell + 1 == k; }

    friend bool operator==(const CycleParams&, const CycleParams&) = default;
};

// Requires k >= 2, 1 <= ell < k, (k - ell) | n, n >= 2k - ell and m >= 3.
CycleParams validate_params(std::int64_t n, std::int64_t k, std::int64_t ell);

// Windows E(i) = {pi((i-1)(k-ell) + j) : j in [k]} with pi(n + r) = pi(r),
// each in canonical form. Throws InvalidInputError unless pi permutes [n].
std::vector<Edge> hamperm_edges(std::span<const Vertex> pi, const CycleParams& params);

class Hamperm {
public:
    Hamperm(Permutation pi, const CycleParams& params);

    const Permutation& pi() const { return pi_; }
    const CycleParams& params() const { return params_; }
    const std::vector<Edge>& induced_edges() const { return edges_; }

private:
    Permutation pi_;
    CycleParams params_;
    std::vector<Edge> edges_;
};

// True iff every window of pi is an edge of h.
bool is_hamperm(const HypergraphInstance& h, std::span<const Vertex> pi, unsigned ell);

struct IntersectionProfile {
    std::size_t b = 0; // shared edges
    std::size_t a = 0; // maximal paths they form

    friend bool operator==(const IntersectionProfile&, const IntersectionProfile&) = default;
};

// b counts shared edges. a counts maximal cyclic runs of shared edges in the
// edge order of `first` (consecutive cycle edges always meet in ell >= 1
// vertices). A fully shared cycle is one path: (m, 1).
IntersectionProfile intersection_profile(const Hamperm& first, const Hamperm& second);

// Same, with the membership side given as a sorted edge list.
IntersectionProfile intersection_profile(std::span<const Edge> reference_cycle,
                                         std::span<const Edge> other_sorted);

// Sorted induced edges; equal exactly when the two hamperms induce the same
// Hamilton cycle.
using CycleKey = std::vector<Edge>;
CycleKey canonical_cycle_key(const Hamperm& h);

} // namespace hamcycle
