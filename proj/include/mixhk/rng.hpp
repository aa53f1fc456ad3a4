#pragma once

#include <cstdint>
#include <random>

namespace mixhk {

// Deterministic random source. The engine (mt19937_64) has a fully specified
// output sequence, and the floating-point helpers below avoid the
// implementation-defined std distributions, so identical seeds give identical
// draw sequences on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform index in [0, n); n must be positive.
    std::size_t index(std::size_t n) {
        std::size_t i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer, used to derive statistically independent lane seeds
// from one run seed.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Lane offsets for the per-run random streams. Each stream owns one concern,
// so changing e.g. the social-graph spec never shifts the stubbornness draws.
inline constexpr std::uint64_t kAlphaLane = 1;
inline constexpr std::uint64_t kScheduleLane = 2;
inline constexpr std::uint64_t kSocialLane = 3;
inline constexpr std::uint64_t kInitLane = 4;

inline std::uint64_t lane_seed(std::uint64_t run_seed, std::uint64_t lane) {
    return mix64(run_seed + lane);
}

// The four independent streams of one run. Replicate r of a batch uses
// RngLanes(seed + r).
struct RngLanes {
    Rng alpha;
    Rng schedule;
    Rng social;
    Rng init;

    explicit RngLanes(std::uint64_t run_seed)
        : alpha(lane_seed(run_seed, kAlphaLane)),
          schedule(lane_seed(run_seed, kScheduleLane)),
          social(lane_seed(run_seed, kSocialLane)),
          init(lane_seed(run_seed, kInitLane)) {}
};

}  // namespace mixhk
