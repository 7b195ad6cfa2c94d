#pragma once

#include <cstdint>

namespace hqst::rng {

/// splitmix64 finalizer; full-period mixing of a 64-bit counter.
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based stream: output i of the stream seeded by `seed`.  Streams
/// derived this way are order-independent, so parallel consumers that index
/// by trial produce identical results regardless of scheduling.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in the open interval (0, 1).
    double next_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform double in the open interval (-half_width, half_width).
    double next_symmetric(double half_width) {
        return half_width * (2.0 * next_open01() - 1.0);
    }

private:
    std::uint64_t state_;
};

/// Seed for the i-th independent substream of a master seed.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return mix(master ^ mix(index));
}

}  // namespace hqst::rng
