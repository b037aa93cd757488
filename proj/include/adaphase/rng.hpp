#pragma once

#include <cstdint>

#include "adaphase/angles.hpp"

namespace adaphase {

/// Splittable deterministic random stream.
///
/// SplitMix64 with the initial state derived from the (seed, stream) pair by
/// two finalizer rounds, so distinct streams of the same seed are
/// decorrelated. The same (seed, stream) pair yields the same sequence on
/// every platform and under any thread layout, which is what makes
/// trial-level parallelism reproducible: each trial owns stream = trial index
/// and never shares generator state.
class RngStream {
  public:
    explicit RngStream(uint64_t seed, uint64_t stream = 0)
        : state_(mix(mix(seed + golden) ^ mix(stream + 0xD1B54A32D192ED03ULL))) {}

    uint64_t next_u64() {
        state_ += golden;
        return mix(state_);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform angle in (-pi, pi].
    double next_angle() { return pi - two_pi * next_double(); }

  private:
    static constexpr uint64_t golden = 0x9E3779B97F4A7C15ULL;

    static constexpr uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    uint64_t state_;
};

}  // namespace adaphase
