#pragma once

#include <cstdint>

namespace decide {

/// Counter-based uniform stream: draw i depends only on (seed, i), so any
/// split of the counter range across threads reproduces the same numbers.
/// Each draw is the SplitMix64 output at position i of the seeded sequence.
class CounterStream {
  public:
    explicit CounterStream(std::uint64_t seed) : key_(mix(seed)) {}

    std::uint64_t bits(std::uint64_t counter) const {
        return mix(key_ + (counter + 1) * 0x9E3779B97F4A7C15ULL);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
};

} // namespace decide
