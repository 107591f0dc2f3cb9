#pragma once

#include <cstdint>

namespace zoc {

//! Counter-based uniform stream.
//!
//! Output i is a pure function of (seed, i), so any partition of a batch into
//! chunks reproduces the serial stream exactly. The mapping is the SplitMix64
//! sequence seeded with `seed`, indexed by counter.
class counter_rng {
public:
    explicit counter_rng(std::uint64_t seed) : seed_(seed) {}

    //! Uniform draw strictly inside (0, 1).
    double uniform(std::uint64_t counter) const {
        const std::uint64_t z = mix(seed_ + (counter + 1) * 0x9E3779B97F4A7C15ull);
        return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t seed() const { return seed_; }

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

private:
    std::uint64_t seed_;
};

} // namespace zoc
