#pragma once

#include <cstdint>

namespace modstrip {

/// splitmix64; fixed algorithm so seeded runs are identical across
/// platforms and standard libraries.
struct Rng {
    std::uint64_t state = 0;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next()
    {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; } // [0,1)
    double symmetric() { return 2.0 * uniform() - 1.0; }                       // [-1,1)
};

} // namespace modstrip
