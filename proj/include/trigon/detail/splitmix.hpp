#pragma once

#include <cstdint>

namespace trigon::detail {

/// splitmix64 step: advances the state and returns a mixed 64-bit word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: the stream for (seed, index, stream) is a pure
/// function of its key, so samples can be drawn in any order or in parallel
/// and still agree bit for bit with sequential generation.
class IndexRng {
  public:
    IndexRng(std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0) {
        state_ = seed;
        splitmix64(state_);
        state_ ^= 0x9E3779B97F4A7C15ULL * index + 0xBF58476D1CE4E5B9ULL * stream;
        splitmix64(state_);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

}  // namespace trigon::detail
