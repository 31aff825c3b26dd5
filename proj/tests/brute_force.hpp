#pragma once

// Test-only oracles: plain permutation enumeration over std::set edge lists,
// sharing no code with the search or oracle kernels.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "hamcycle/core.hpp"

namespace brute {

using Set = std::vector<int>;

struct Graph {
    int n = 0;
    int k = 0;
    std::set<Set> edges;
};

inline Graph from_instance(const hamcycle::HypergraphInstance& h) {
    Graph g{static_cast<int>(h.n()), static_cast<int>(h.k()), {}};
    for (const auto& e : h.edges()) g.edges.insert(Set(e.vertices().begin(), e.vertices().end()));
    return g;
}

inline std::vector<Set> windows(const std::vector<int>& seq, int k, int ell) {
    const int len = static_cast<int>(seq.size());
    std::vector<Set> out;
    for (int start = 0; start < len; start += k - ell) {
        Set w;
        for (int j = 0; j < k; ++j) w.push_back(seq[(start + j) % len]);
        std::sort(w.begin(), w.end());
        out.push_back(w);
    }
    return out;
}

inline bool all_edges(const Graph& g, const std::vector<int>& seq, int ell) {
    for (const Set& w : windows(seq, g.k, ell)) {
        if (!g.edges.contains(w)) return false;
    }
    return true;
}

inline std::vector<int> identity(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return v;
}

inline std::uint64_t count_hamperms(const Graph& g, int ell) {
    std::vector<int> pi = identity(g.n);
    std::uint64_t count = 0;
    do {
        count += all_edges(g, pi, ell);
    } while (std::next_permutation(pi.begin(), pi.end()));
    return count;
}

inline bool has_hamilton(const Graph& g, int ell) {
    std::vector<int> pi = identity(g.n);
    do {
        if (all_edges(g, pi, ell)) return true;
    } while (std::next_permutation(pi.begin(), pi.end()));
    return false;
}

inline std::uint64_t count_cycles(const Graph& g, int ell) {
    std::set<std::vector<Set>> seen;
    std::vector<int> pi = identity(g.n);
    do {
        if (all_edges(g, pi, ell)) {
            auto w = windows(pi, g.k, ell);
            std::sort(w.begin(), w.end());
            seen.insert(w);
        }
    } while (std::next_permutation(pi.begin(), pi.end()));
    return seen.size();
}

// Some r-subset with a circular order whose r consecutive k-windows are edges.
inline bool has_tight_cycle(const Graph& g, int r) {
    for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
        if (__builtin_popcount(mask) != r) continue;
        std::vector<int> verts;
        for (int v = 0; v < g.n; ++v) {
            if (mask >> v & 1u) verts.push_back(v + 1);
        }
        do {
            if (all_edges(g, verts, g.k - 1)) return true;
        } while (std::next_permutation(verts.begin() + 1, verts.end()));
    }
    return false;
}

struct Profile {
    std::size_t b = 0;
    std::size_t a = 0;
};

// Shared window count, and maximal cyclic runs of shared windows in the
// reference order; a full overlap is a single run.
inline Profile profile(const std::vector<int>& ref, const std::vector<int>& other, int k, int ell) {
    const auto ref_w = windows(ref, k, ell);
    const auto other_w = windows(other, k, ell);
    const std::set<Set> other_set(other_w.begin(), other_w.end());
    const std::size_t m = ref_w.size();
    std::vector<int> shared(m);
    Profile p;
    for (std::size_t i = 0; i < m; ++i) {
        shared[i] = other_set.contains(ref_w[i]);
        p.b += shared[i];
    }
    if (p.b == m) return {m, 1};
    for (std::size_t i = 0; i < m; ++i) {
        if (shared[i] && !shared[(i + m - 1) % m]) ++p.a;
    }
    return p;
}

} // namespace brute
