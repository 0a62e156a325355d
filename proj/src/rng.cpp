#include "mgfas/rng.hpp"

namespace mgfas {

std::uint64_t CounterRng::bits(std::uint64_t n) const {
    std::uint64_t z = seed_ + (n + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double CounterRng::uniform(std::uint64_t n) const { return static_cast<double>(bits(n) >> 11) * 0x1.0p-53; }

void fill_random(Field& f, std::uint64_t seed, double lo, double hi) {
    const CounterRng rng(seed);
    std::uint64_t n = 0;
    for (int k = f.active_begin(2); k < f.active_end(2); ++k)
        for (int j = f.active_begin(1); j < f.active_end(1); ++j)
            for (int i = f.active_begin(0); i < f.active_end(0); ++i)
                f(i, j, k) = lo + (hi - lo) * rng.uniform(n++);
    f.mark_stale();
}

} // namespace mgfas
