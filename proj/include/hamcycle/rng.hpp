#pragma once

#include <array>
#include <cstdint>

namespace hamcycle {

// SplitMix64 (Steele, Lea, Flood 2014). Used for seeding and seed mixing.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman, Vigna). State is seeded by four SplitMix64
// outputs of the 64-bit seed. Output stream is identical on every platform.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) from the top 53 bits of one output.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound) by rejecting draws below 2^64 mod bound.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t x = (*this)();
            if (x >= threshold) return x % bound;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> s_{};
};

// Per-trial seed: a SplitMix64 finalizer chain over (base, stream, index).
// Depends only on its arguments, never on execution order or thread count.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t h = SplitMix64(base).next();
    h = SplitMix64(h ^ (stream * 0xd1b54a32d192ed03ULL)).next();
    h = SplitMix64(h ^ (index * 0xaef17502108ef2d9ULL)).next();
    return h;
}

} // namespace hamcycle
