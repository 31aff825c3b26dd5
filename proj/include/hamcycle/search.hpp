#pragma once

#include <cstdint>
#include <optional>

#include "hamcycle/core.hpp"

namespace hamcycle {

struct SearchResult {
    bool found = false;
    std::optional<Hamperm> witness;
    std::uint64_t nodes_explored = 0;
};

// Capacity gates for the exact procedures. The cycle searches memoize failed
// states (visited mask, ordered last k-1 vertices); they refuse inputs where
// log2 of that state space exceeds max_log2_states. With the default 34 that
// admits n <= 24 at k = 3.
struct SearchLimits {
    double max_log2_states = 34.0;
    Vertex max_count_vertices = 10; // exhaustive counting
};

// Tight (ell = k-1) Hamilton cycle by subset DP. Vertex 1 is pinned to the
// first position. Requires n >= k+1 and n <= 64.
SearchResult has_tight_hamilton(const HypergraphInstance& h, const SearchLimits& limits = {});

// ell-overlapping Hamilton cycle. Extends the permutation vertex by vertex
// (smallest unused label first), checking every window as it completes, with
// vertex 1 pinned inside the first block of k-ell positions.
SearchResult has_overlap_hamilton(const HypergraphInstance& h, unsigned ell,
                                  const SearchLimits& limits = {});

// Dispatches to has_tight_hamilton when ell = k-1.
SearchResult has_hamilton(const HypergraphInstance& h, unsigned ell, const SearchLimits& limits = {});

// Exact number of hamperms, i.e. X realized on h.
std::uint64_t count_hamperms(const HypergraphInstance& h, unsigned ell, const SearchLimits& limits = {});

// Number of distinct ell-overlapping Hamilton cycles (distinct edge sets).
std::uint64_t count_distinct_cycles(const HypergraphInstance& h, unsigned ell,
                                    const SearchLimits& limits = {});

// Tight cycle on some r of the n vertices, k+1 <= r <= n.
bool has_tight_cycle_of_length(const HypergraphInstance& h, Vertex r, const SearchLimits& limits = {});

// The r = k+1 case directly: a (k+1)-set all of whose k-subsets are edges.
bool has_complete_k_plus_one_set(const HypergraphInstance& h);

struct PancyclicResult {
    bool pancyclic = false;
    std::optional<Vertex> first_missing; // smallest r without a tight C_r
};

PancyclicResult is_pancyclic(const HypergraphInstance& h, const SearchLimits& limits = {});

} // namespace hamcycle
