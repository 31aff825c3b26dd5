#include "hamcycle/core.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hamcycle/numeric.hpp"

namespace hamcycle {

namespace {

constexpr std::uint64_t kBitmapLimit = std::uint64_t{1} << 24;

std::uint64_t checked_binomial(std::uint64_t n, std::uint64_t k) {
    auto c = binomial(n, k);
    if (!c) {
        throw CapacityError("C(" + std::to_string(n) + ", " + std::to_string(k) +
                            ") does not fit in 64 bits");
    }
    return *c;
}

std::uint64_t total_edges(Vertex n, unsigned k) { return checked_binomial(n, k); }

void check_shape(Vertex n, unsigned k) {
    if (k < 2) throw RangeError("uniformity k must be at least 2");
    if (n < k) throw RangeError("vertex count n must be at least k");
}

} // namespace

std::strong_ordering operator<=>(const Edge& a, const Edge& b) {
    // Colex: compare from the largest label down.
    return std::lexicographical_compare_three_way(a.vertices_.rbegin(), a.vertices_.rend(),
                                                  b.vertices_.rbegin(), b.vertices_.rend());
}

std::uint64_t Edge::colex_rank() const {
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const std::uint64_t term = checked_binomial(vertices_[i] - 1, i + 1);
        if (rank > ~std::uint64_t{0} - term) throw CapacityError("colex rank overflow");
        rank += term;
    }
    return rank;
}

Edge canonicalize_edge(std::span<const Vertex> labels, Vertex n) {
    std::vector<Vertex> sorted(labels.begin(), labels.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 1 || sorted[i] > n) {
            throw InvalidInputError("edge label " + std::to_string(sorted[i]) +
                                    " outside [1, " + std::to_string(n) + "]");
        }
        if (i > 0 && sorted[i] == sorted[i - 1]) {
            throw InvalidInputError("duplicate label " + std::to_string(sorted[i]) + " in edge");
        }
    }
    return Edge(std::move(sorted));
}

Edge unrank_edge(std::uint64_t rank, unsigned k) {
    std::vector<Vertex> labels(k);
    std::uint64_t upper = k + 1;
    for (unsigned i = k; i >= 1; --i) {
        // Largest c with C(c, i) <= rank; c >= i - 1 since C(i - 1, i) = 0.
        auto fits = [&](std::uint64_t c) {
            auto v = binomial(c, i);
            return v && *v <= rank;
        };
        std::uint64_t lo = i - 1;
        std::uint64_t hi = std::max<std::uint64_t>(upper, i);
        while (fits(hi)) hi *= 2;
        while (hi - lo > 1) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            (fits(mid) ? lo : hi) = mid;
        }
        labels[i - 1] = static_cast<Vertex>(lo + 1);
        rank -= *binomial(lo, i);
        upper = lo;
    }
    return Edge(std::move(labels));
}

std::uint64_t mask_colex_rank(std::uint64_t mask) {
    std::uint64_t rank = 0;
    unsigned j = 1;
    while (mask != 0) {
        const unsigned c = static_cast<unsigned>(std::countr_zero(mask));
        rank += small_binomial(c, j++);
        mask &= mask - 1;
    }
    return rank;
}

std::ostream& operator<<(std::ostream& os, const Edge& e) {
    os << '{';
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e.vertices()[i];
    return os << '}';
}

HypergraphInstance::HypergraphInstance(Vertex n, unsigned k, std::vector<Edge> edges)
    : n_(n), k_(k) {
    check_shape(n, k);
    total_edges(n, k);
    ranks_.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.size() != k) throw InvalidInputError("edge size differs from k");
        if (e.max_label() > n) throw InvalidInputError("edge label exceeds n");
        ranks_.push_back(e.colex_rank());
    }
    std::sort(ranks_.begin(), ranks_.end());
    if (std::adjacent_find(ranks_.begin(), ranks_.end()) != ranks_.end()) {
        throw InvalidInputError("duplicate edge");
    }
    build_bitmap();
}

HypergraphInstance::HypergraphInstance(Vertex n, unsigned k, std::vector<std::uint64_t> sorted_ranks,
                                       bool)
    : n_(n), k_(k), ranks_(std::move(sorted_ranks)) {
    build_bitmap();
}

HypergraphInstance HypergraphInstance::from_ranks(Vertex n, unsigned k,
                                                  std::vector<std::uint64_t> ranks) {
    check_shape(n, k);
    const std::uint64_t total = total_edges(n, k);
    std::sort(ranks.begin(), ranks.end());
    if (std::adjacent_find(ranks.begin(), ranks.end()) != ranks.end()) {
        throw InvalidInputError("duplicate edge rank");
    }
    if (!ranks.empty() && ranks.back() >= total) throw InvalidInputError("edge rank out of range");
    return HypergraphInstance(n, k, std::move(ranks), true);
}

HypergraphInstance HypergraphInstance::empty(Vertex n, unsigned k) { return from_ranks(n, k, {}); }

HypergraphInstance HypergraphInstance::complete(Vertex n, unsigned k) {
    check_shape(n, k);
    const std::uint64_t total = total_edges(n, k);
    if (total > kBitmapLimit) throw CapacityError("complete hypergraph too large");
    std::vector<std::uint64_t> ranks(total);
    for (std::uint64_t r = 0; r < total; ++r) ranks[r] = r;
    return HypergraphInstance(n, k, std::move(ranks), true);
}

void HypergraphInstance::build_bitmap() {
    const std::uint64_t total = total_edges(n_, k_);
    if (total > kBitmapLimit) return;
    bitmap_.assign((total + 63) / 64, 0);
    for (std::uint64_t r : ranks_) bitmap_[r >> 6] |= std::uint64_t{1} << (r & 63);
}

std::vector<Edge> HypergraphInstance::edges() const {
    std::vector<Edge> out;
    out.reserve(ranks_.size());
    for (std::uint64_t r : ranks_) out.push_back(unrank_edge(r, k_));
    return out;
}

bool HypergraphInstance::contains_rank(std::uint64_t rank) const {
    if (!bitmap_.empty()) {
        if ((rank >> 6) >= bitmap_.size()) return false;
        return (bitmap_[rank >> 6] >> (rank & 63)) & 1u;
    }
    return std::binary_search(ranks_.begin(), ranks_.end(), rank);
}

bool HypergraphInstance::contains(const Edge& e) const {
    if (e.size() != k_ || e.max_label() > n_) return false;
    return contains_rank(e.colex_rank());
}

bool HypergraphInstance::contains_mask(std::uint64_t mask) const {
    if (static_cast<unsigned>(std::popcount(mask)) != k_) return false;
    return contains_rank(mask_colex_rank(mask));
}

void write_hypergraph(std::ostream& os, const HypergraphInstance& h) {
    os << h.n() << ' ' << h.k() << '\n';
    for (std::uint64_t r : h.ranks()) {
        const Edge e = unrank_edge(r, h.k());
        for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e.vertices()[i];
        os << '\n';
    }
}

HypergraphInstance read_hypergraph(std::istream& is) {
    std::string line;
    auto next_content_line = [&]() {
        while (std::getline(is, line)) {
            const auto first = line.find_first_not_of(" \t\r");
            if (first != std::string::npos && line[first] != '#') return true;
        }
        return false;
    };
    if (!next_content_line()) throw InvalidInputError("hypergraph file: missing header line");
    std::istringstream header(line);
    long long n = 0, k = 0;
    if (!(header >> n >> k) || n < 1 || k < 2) {
        throw InvalidInputError("hypergraph file: header must be \"n k\" with n >= 1, k >= 2");
    }
    std::vector<Edge> edges;
    std::size_t line_no = 1;
    while (next_content_line()) {
        ++line_no;
        std::istringstream row(line);
        std::vector<Vertex> labels;
        long long v = 0;
        while (row >> v) {
            if (v < 1 || v > n) {
                throw InvalidInputError("hypergraph file: label out of range on edge " +
                                        std::to_string(line_no - 1));
            }
            labels.push_back(static_cast<Vertex>(v));
        }
        if (!row.eof() || labels.size() != static_cast<std::size_t>(k)) {
            throw InvalidInputError("hypergraph file: edge " + std::to_string(line_no - 1) +
                                    " must list exactly k labels");
        }
        edges.push_back(canonicalize_edge(labels, static_cast<Vertex>(n)));
    }
    return HypergraphInstance(static_cast<Vertex>(n), static_cast<unsigned>(k), std::move(edges));
}

CycleParams validate_params(std::int64_t n, std::int64_t k, std::int64_t ell) {
    if (k < 2) throw RangeError("k must be at least 2");
    if (ell < 1 || ell >= k) {
        throw RangeError("ell must lie in [1, k-1]; got ell=" + std::to_string(ell));
    }
    if (n < 1) throw RangeError("n must be positive");
    const std::int64_t shift = k - ell;
    if (n % shift != 0) {
        throw DivisibilityError("k - ell = " + std::to_string(shift) + " does not divide n = " +
                                std::to_string(n));
    }
    if (n < 2 * k - ell) {
        throw TooSmallError("n = " + std::to_string(n) + " is below 2k - ell = " +
                            std::to_string(2 * k - ell));
    }
    const std::int64_t m = n / shift;
    if (m < 3) {
        throw TooSmallError("cycle would have m = " + std::to_string(m) + " < 3 edges");
    }
    if (n > std::int64_t{0xffffffff}) throw RangeError("n exceeds the vertex label range");
    return {static_cast<Vertex>(n), static_cast<unsigned>(k), static_cast<unsigned>(ell),
            static_cast<std::size_t>(m)};
}

namespace {

void check_permutation(std::span<const Vertex> pi, Vertex n) {
    if (pi.size() != n) throw InvalidInputError("permutation length differs from n");
    std::vector<bool> seen(n + 1, false);
    for (Vertex v : pi) {
        if (v < 1 || v > n || seen[v]) throw InvalidInputError("not a permutation of [n]");
        seen[v] = true;
    }
}

} // namespace

std::vector<Edge> hamperm_edges(std::span<const Vertex> pi, const CycleParams& params) {
    check_permutation(pi, params.n);
    std::vector<Edge> out;
    out.reserve(params.m);
    std::vector<Vertex> window(params.k);
    for (std::size_t i = 0; i < params.m; ++i) {
        const std::size_t start = i * params.shift();
        for (unsigned j = 0; j < params.k; ++j) window[j] = pi[(start + j) % params.n];
        out.push_back(canonicalize_edge(window, params.n));
    }
    return out;
}

Hamperm::Hamperm(Permutation pi, const CycleParams& params)
    : pi_(std::move(pi)), params_(params), edges_(hamperm_edges(pi_, params_)) {}

bool is_hamperm(const HypergraphInstance& h, std::span<const Vertex> pi, unsigned ell) {
    const CycleParams params = validate_params(h.n(), h.k(), ell);
    for (const Edge& e : hamperm_edges(pi, params)) {
        if (!h.contains(e)) return false;
    }
    return true;
}

IntersectionProfile intersection_profile(std::span<const Edge> reference_cycle,
                                         std::span<const Edge> other_sorted) {
    const std::size_t m = reference_cycle.size();
    std::vector<bool> shared(m);
    IntersectionProfile out;
    for (std::size_t i = 0; i < m; ++i) {
        shared[i] = std::binary_search(other_sorted.begin(), other_sorted.end(), reference_cycle[i]);
        out.b += shared[i];
    }
    if (out.b == m) {
        out.a = 1;
        return out;
    }
    // Count run starts: shared positions whose cyclic predecessor is not shared.
    for (std::size_t i = 0; i < m; ++i) {
        if (shared[i] && !shared[(i + m - 1) % m]) ++out.a;
    }
    return out;
}

IntersectionProfile intersection_profile(const Hamperm& first, const Hamperm& second) {
    if (!(first.params() == second.params())) {
        throw InvalidInputError("intersection_profile: hamperms have different parameters");
    }
    const CycleKey other = canonical_cycle_key(second);
    return intersection_profile(first.induced_edges(), other);
}

CycleKey canonical_cycle_key(const Hamperm& h) {
    CycleKey key = h.induced_edges();
    std::sort(key.begin(), key.end());
    return key;
}

} // namespace hamcycle
