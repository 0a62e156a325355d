#pragma once

// Counter-based uniform generator for reproducible random fields.
//
// Value number n of stream `seed` is
//     z = seed + (n + 1) * 0x9E3779B97F4A7C15            (mod 2^64)
//     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//     z =  z ^ (z >> 31)
//     u = (z >> 11) * 2^-53                              in [0, 1)
// i.e. the SplitMix64 output for counter n. Random fields number their
// active points in storage order (x fastest, then y, then z) starting at 0.

#include "mgfas/grid.hpp"

#include <cstdint>

namespace mgfas {

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t n) const;
    double uniform(std::uint64_t n) const;

private:
    std::uint64_t seed_;
};

/// Active points set to uniform values in [lo, hi); ghosts marked stale.
void fill_random(Field& f, std::uint64_t seed, double lo = 0.0, double hi = 1.0);

} // namespace mgfas
