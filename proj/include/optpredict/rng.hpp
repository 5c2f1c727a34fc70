#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace optpredict::mc {

/// Counter-based random stream. Draw i of stream (seed, stream_id) depends
/// only on those three integers, so per-sample substreams can be handed to
/// workers in any order without changing the produced numbers. The mixer is
/// the SplitMix64 finalizer.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id),
          key_(mix(mix(seed + 0x9E3779B97F4A7C15ull) ^
                   mix(stream_id + 0xD1B54A32D192ED03ull))) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ull); }

    /// Uniform in [0, 1), 53 usable bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal by Box-Muller; consumes two uniforms per draw.
    double normal() {
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace optpredict::mc
