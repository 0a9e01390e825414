#pragma once

// Deterministic portable randomness. xoshiro256++ (Blackman & Vigna)
// seeded through splitmix64, both fully specified at the bit level, so a
// given seed reproduces the same stream on every platform and compiler.
// This is what makes seeded CLI runs byte-for-byte reproducible; none of
// the <random> engines guarantee cross-platform distributions.

#include <cstdint>
#include <cmath>

namespace distcalc {

// Advances the splitmix64 state and returns the next output.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Stream seed for trial `index` of a run seeded with `seed`. Distinct
// indices give decorrelated streams, so trials are reproducible no matter
// how many draws earlier trials consumed.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ull * (index + 1));
    splitmix64(s);
    return splitmix64(s);
}

class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64(s);
    }

    std::uint64_t next() {
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

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Log-uniform on [a, b]; requires 0 < a <= b.
    double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

    // Uniform integer in [lo, hi]; span must be tiny relative to 2^64,
    // so the modulo bias is negligible.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
};

}  // namespace distcalc
