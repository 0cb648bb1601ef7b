#pragma once

#include <cstdint>

namespace interdep {

// splitmix64 step; used to expand seeds into full generator states.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// xoshiro256++ generator. Self-contained so that streams are bit-stable
// across compilers and standard libraries, which the determinism
// guarantees of the sampling code rely on.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Coin flip with success probability p.  p >= 1 always succeeds,
    // p <= 0 never does.
    bool bernoulli(double p) { return next_double() < p; }

    // Uniform integer in [0, bound) by rejection; bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

// Seed for the i-th substream of a master seed.  Counter-based: the
// stream for index i never depends on how many other streams exist or
// in which order they are drawn, so parallel consumers stay
// deterministic.
inline std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t s = master_seed ^ (0xd1342543de82ef95ull * (index + 1));
    return splitmix64(s);
}

inline std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t i, std::uint64_t j) {
    return substream_seed(substream_seed(master_seed, i), j);
}

}  // namespace interdep
