#pragma once

#include <cstdint>
#include <random>

namespace mfsi {

/// Seeded generator with deterministic child streams. All randomness in the
/// library flows from one 64-bit seed through split().
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) : engine_(mix(seed)) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Independent stream; advances this generator by one draw.
    Rng split() { return Rng(engine_() ^ 0x9e3779b97f4a7c15ULL); }

    /// Uniform integer in [lo, hi].
    template <class Int>
    Int uniform(Int lo, Int hi)
    {
        return std::uniform_int_distribution<Int>(lo, hi)(engine_);
    }

    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }

private:
    // splitmix64 finaliser so that nearby seeds give unrelated streams
    static std::uint64_t mix(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace mfsi
