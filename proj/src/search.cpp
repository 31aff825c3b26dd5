#include "hamcycle/search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

namespace hamcycle {

namespace {

// Places vertices one position at a time into a cyclic sequence of `length`
// slots. Windows start at every multiple of `shift` and span k slots; each is
// checked as soon as its last slot is filled, and the wrapping windows when the
// sequence is complete. Vertices are 0-based bit indices internally.
class WindowSearch {
public:
    WindowSearch(const HypergraphInstance& h, unsigned ell, unsigned length, std::uint64_t allowed,
                 bool memoize)
        : h_(h),
          k_(h.k()),
          ell_(ell),
          shift_(h.k() - ell),
          length_(length),
          allowed_(allowed),
          memoize_(memoize && h.k() - 1 <= 10),
          seq_(length) {}

    // Pins `anchor` somewhere in slots [0, shift) and looks for one cycle.
    bool find(unsigned anchor) {
        for (unsigned slot = 0; slot < shift_; ++slot) {
            anchor_ = anchor;
            anchor_slot_ = slot;
            prefix_len_ = std::max(ell_, slot + 1);
            memo_.clear();
            if (extend(0, 0)) return true;
        }
        return false;
    }

    // Visits every complete sequence (no pinning, no memo).
    template <class Visit>
    void enumerate(Visit&& visit) {
        anchor_.reset();
        memoize_ = false;
        enumerate_from(0, 0, visit);
    }

    const std::vector<unsigned>& sequence() const { return seq_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    struct StateKey {
        std::uint64_t mask;
        std::uint64_t suffix;
        bool operator==(const StateKey&) const = default;
    };
    struct StateHash {
        std::size_t operator()(const StateKey& s) const {
            return std::hash<std::uint64_t>{}(s.mask * 0x9e3779b97f4a7c15ULL ^ s.suffix);
        }
    };

    std::uint64_t window_mask(unsigned start) const {
        std::uint64_t bits = 0;
        for (unsigned j = 0; j < k_; ++j) bits |= std::uint64_t{1} << seq_[(start + j) % length_];
        return bits;
    }

    // Window ending at `pos`, if one does and it does not wrap.
    bool closing_window_ok(unsigned pos) const {
        if (pos + 1 < k_) return true;
        const unsigned start = pos + 1 - k_;
        if (start % shift_ != 0) return true;
        return h_.contains_mask(window_mask(start));
    }

    bool wrap_windows_ok() const {
        for (unsigned start = 0; start < length_; start += shift_) {
            if (start + k_ > length_ && !h_.contains_mask(window_mask(start))) return false;
        }
        return true;
    }

    std::uint64_t candidates(unsigned pos, std::uint64_t used) const {
        std::uint64_t free = allowed_ & ~used;
        if (!anchor_) return free;
        const std::uint64_t anchor_bit = std::uint64_t{1} << *anchor_;
        return pos == anchor_slot_ ? free & anchor_bit : free & ~anchor_bit;
    }

    StateKey key(unsigned pos, std::uint64_t used) const {
        std::uint64_t suffix = 0;
        const unsigned from = pos >= k_ - 1 ? pos - (k_ - 1) : 0;
        for (unsigned i = from; i < pos; ++i) suffix = (suffix << 6) | seq_[i];
        return {used, suffix};
    }

    bool extend(unsigned pos, std::uint64_t used) {
        ++nodes_;
        if (pos == length_) return wrap_windows_ok();
        // The first prefix_len_ slots fix what the wrapping windows need, so
        // beyond them the outcome depends only on (used, last k-1 vertices).
        if (pos == prefix_len_) memo_.clear();
        const bool cacheable = memoize_ && pos > prefix_len_;
        if (cacheable && memo_.contains(key(pos, used))) return false;

        std::uint64_t options = candidates(pos, used);
        while (options != 0) {
            const unsigned v = static_cast<unsigned>(std::countr_zero(options));
            options &= options - 1;
            seq_[pos] = v;
            if (closing_window_ok(pos) && extend(pos + 1, used | (std::uint64_t{1} << v))) return true;
        }
        if (cacheable) memo_.insert(key(pos, used));
        return false;
    }

    template <class Visit>
    void enumerate_from(unsigned pos, std::uint64_t used, Visit& visit) {
        ++nodes_;
        if (pos == length_) {
            if (wrap_windows_ok()) visit(seq_);
            return;
        }
        std::uint64_t options = allowed_ & ~used;
        while (options != 0) {
            const unsigned v = static_cast<unsigned>(std::countr_zero(options));
            options &= options - 1;
            seq_[pos] = v;
            if (closing_window_ok(pos)) enumerate_from(pos + 1, used | (std::uint64_t{1} << v), visit);
        }
    }

    const HypergraphInstance& h_;
    unsigned k_;
    unsigned ell_;
    unsigned shift_;
    unsigned length_;
    std::uint64_t allowed_;
    bool memoize_;
    std::optional<unsigned> anchor_;
    unsigned anchor_slot_ = 0;
    unsigned prefix_len_ = 0;
    std::vector<unsigned> seq_;
    std::unordered_set<StateKey, StateHash> memo_;
    std::uint64_t nodes_ = 0;
};

std::uint64_t low_bits(unsigned count) {
    return count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
}

void check_search_capacity(const HypergraphInstance& h, const SearchLimits& limits) {
    if (h.n() > 64) throw CapacityError("exact search supports n <= 64");
    const double log2_states = h.n() + (h.k() - 1.0) * std::log2(static_cast<double>(h.n()));
    if (log2_states > limits.max_log2_states) {
        throw CapacityError("search state space 2^" + std::to_string(log2_states) +
                            " exceeds the configured limit 2^" +
                            std::to_string(limits.max_log2_states));
    }
}

void check_count_capacity(const HypergraphInstance& h, const SearchLimits& limits) {
    if (h.n() > limits.max_count_vertices || h.n() > 64) {
        throw CapacityError("exhaustive counting limited to n <= " +
                            std::to_string(limits.max_count_vertices));
    }
}

Permutation to_labels(const std::vector<unsigned>& seq) {
    Permutation pi(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) pi[i] = seq[i] + 1;
    return pi;
}

SearchResult run_hamilton(const HypergraphInstance& h, const CycleParams& params,
                          const SearchLimits& limits) {
    check_search_capacity(h, limits);
    WindowSearch search(h, params.ell, h.n(), low_bits(h.n()), true);
    SearchResult out;
    out.found = search.find(0);
    out.nodes_explored = search.nodes();
    if (out.found) out.witness.emplace(to_labels(search.sequence()), params);
    return out;
}

} // namespace

SearchResult has_tight_hamilton(const HypergraphInstance& h, const SearchLimits& limits) {
    if (h.n() < h.k() + 1) throw TooSmallError("tight Hamilton cycle needs n >= k + 1");
    return run_hamilton(h, validate_params(h.n(), h.k(), h.k() - 1), limits);
}

SearchResult has_overlap_hamilton(const HypergraphInstance& h, unsigned ell, const SearchLimits& limits) {
    return run_hamilton(h, validate_params(h.n(), h.k(), ell), limits);
}

SearchResult has_hamilton(const HypergraphInstance& h, unsigned ell, const SearchLimits& limits) {
    if (ell + 1 == h.k()) return has_tight_hamilton(h, limits);
    return has_overlap_hamilton(h, ell, limits);
}

std::uint64_t count_hamperms(const HypergraphInstance& h, unsigned ell, const SearchLimits& limits) {
    validate_params(h.n(), h.k(), ell);
    check_count_capacity(h, limits);
    WindowSearch search(h, ell, h.n(), low_bits(h.n()), false);
    std::uint64_t count = 0;
    search.enumerate([&](const std::vector<unsigned>&) { ++count; });
    return count;
}

std::uint64_t count_distinct_cycles(const HypergraphInstance& h, unsigned ell,
                                    const SearchLimits& limits) {
    const CycleParams params = validate_params(h.n(), h.k(), ell);
    check_count_capacity(h, limits);
    WindowSearch search(h, ell, h.n(), low_bits(h.n()), false);
    // Sorted window ranks; equivalent to canonical_cycle_key since Edge order
    // is colex order.
    std::set<std::vector<std::uint64_t>> cycles;
    std::vector<std::uint64_t> key(params.m);
    search.enumerate([&](const std::vector<unsigned>& seq) {
        for (std::size_t i = 0; i < params.m; ++i) {
            std::uint64_t bits = 0;
            for (unsigned j = 0; j < params.k; ++j) {
                bits |= std::uint64_t{1} << seq[(i * params.shift() + j) % params.n];
            }
            key[i] = mask_colex_rank(bits);
        }
        std::sort(key.begin(), key.end());
        cycles.insert(key);
    });
    return cycles.size();
}

bool has_complete_k_plus_one_set(const HypergraphInstance& h) {
    if (h.n() > 64) throw CapacityError("exact search supports n <= 64");
    const unsigned size = h.k() + 1;
    if (h.n() < size) return false;
    // Gosper's hack walks (k+1)-subsets in increasing mask order.
    const std::uint64_t limit = h.n() == 64 ? 0 : std::uint64_t{1} << h.n();
    std::uint64_t set = low_bits(size);
    for (;;) {
        bool all = true;
        for (std::uint64_t rest = set; rest != 0 && all; rest &= rest - 1) {
            all = h.contains_mask(set & ~(rest & -rest));
        }
        if (all) return true;
        const std::uint64_t low = set & -set;
        const std::uint64_t ripple = set + low;
        if (ripple == 0 || (limit != 0 && ripple >= limit)) break;
        set = ripple | (((set ^ ripple) >> 2) / low);
        if (limit != 0 && set >= limit) break;
    }
    return false;
}

bool has_tight_cycle_of_length(const HypergraphInstance& h, Vertex r, const SearchLimits& limits) {
    if (r < h.k() + 1 || r > h.n()) {
        throw RangeError("cycle length r = " + std::to_string(r) + " outside [k+1, n]");
    }
    if (r == h.k() + 1) return has_complete_k_plus_one_set(h);
    check_search_capacity(h, limits);
    // Pin the cycle's smallest vertex s to slot 0 and draw the rest from
    // vertices above s.
    for (unsigned s = 0; s + r <= h.n(); ++s) {
        const std::uint64_t allowed = low_bits(h.n()) & ~low_bits(s);
        WindowSearch search(h, h.k() - 1, r, allowed, true);
        if (search.find(s)) return true;
    }
    return false;
}

PancyclicResult is_pancyclic(const HypergraphInstance& h, const SearchLimits& limits) {
    if (h.n() < h.k() + 1) throw TooSmallError("pancyclicity needs n >= k + 1");
    for (Vertex r = h.k() + 1; r <= h.n(); ++r) {
        if (!has_tight_cycle_of_length(h, r, limits)) return {false, r};
    }
    return {true, std::nullopt};
}

} // namespace hamcycle
