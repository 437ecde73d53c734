#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mmgf {

using Rng = std::mt19937_64;

// splitmix64 step; used to derive independent substreams from one seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    return Rng(mix_seed(seed, stream));
}

// Bounded draw and Fisher–Yates shuffle with an engine-only dependency,
// so shuffles are reproducible independent of the standard library's
// distribution implementations.
inline std::uint64_t draw_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

template <typename T>
void shuffle_values(std::vector<T>& values, Rng& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::swap(values[i - 1], values[draw_below(rng, i)]);
    }
}

}  // namespace mmgf
