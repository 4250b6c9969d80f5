#pragma once

#include <cmath>
#include <cstdint>

namespace treeline::rng {

/// SplitMix64 output function; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// Seed of chunk `index` under master seed `seed`.
constexpr std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64((index + 1) * kGolden));
}

/// Key of the `index`-th sample inside a chunk.
constexpr std::uint64_t sample_key(std::uint64_t chunk, std::uint64_t index) {
    return mix64(chunk + (index + 1) * kGolden);
}

/// Integer threshold t with P(u53 < t) = p for a uniform 53-bit u53.
inline std::uint64_t open_threshold(double p) {
    if (p <= 0.0) return 0;
    if (p >= 1.0) return std::uint64_t{1} << 53;
    return static_cast<std::uint64_t>(std::ceil(std::ldexp(p, 53)));
}

/// State of edge `edge` in the sample keyed by `key`. Pure function, so any
/// traversal order sees the same configuration.
inline bool edge_open(std::uint64_t key, std::uint32_t edge, std::uint64_t threshold) {
    return (mix64(key ^ ((std::uint64_t{edge} + 1) * kGolden)) >> 11) < threshold;
}

}  // namespace treeline::rng
