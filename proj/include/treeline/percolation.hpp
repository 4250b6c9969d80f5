#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "treeline/graph.hpp"

namespace treeline {

/// Samples per chunk. Chunk i draws from rng::chunk_seed(seed, i), so results
/// do not depend on how chunks are spread over threads.
inline constexpr std::uint64_t kChunkSize = 4096;

struct CrossingEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;
    std::uint64_t successes = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

struct OffspringEstimate {
    double mean = 0.0;       ///< estimate of E[X_n]
    double std_error = 0.0;
    std::uint64_t samples = 0;
    int n = 0;
    int d = 0;
    /// Single-leaf crossing frequency measured on the same samples.
    CrossingEstimate leaf_crossing{};
};

CrossingEstimate make_crossing_estimate(std::uint64_t successes, std::uint64_t samples,
                                        std::uint64_t seed);

/// Monte-Carlo estimate of P(origin <-> fiber of the target node). OpenMP
/// parallel over chunks.
CrossingEstimate estimate_crossing(const ProductGraph& graph, double p, std::uint64_t samples,
                                   std::uint64_t seed);
CrossingEstimate estimate_crossing(const SlabSpec& spec, double p, std::uint64_t samples,
                                   std::uint64_t seed);

/// Distribution of X_n (number of depth-n fibers reached). Slab only.
OffspringEstimate estimate_offspring(const ProductGraph& graph, double p, std::uint64_t samples,
                                     std::uint64_t seed);
OffspringEstimate estimate_offspring(const SlabSpec& spec, double p, std::uint64_t samples,
                                     std::uint64_t seed);

inline constexpr std::size_t kMaxExactEdges = 25;

/// count[j] = number of j-edge open sets for which the crossing event holds.
using CrossingPolynomial = std::vector<std::uint64_t>;

CrossingPolynomial crossing_polynomial(const ProductGraph& graph);
double evaluate_crossing_polynomial(const CrossingPolynomial& counts, double p);
/// Exact crossing probability by enumerating all 2^|E| configurations.
double exact_crossing(const SlabSpec& spec, double p);

namespace reference {

/// Serial union-find over every edge of every sample. Same edge states as
/// the parallel kernel, so outcomes match sample by sample.
CrossingEstimate estimate_crossing(const ProductGraph& graph, double p, std::uint64_t samples,
                                   std::uint64_t seed);
OffspringEstimate estimate_offspring(const ProductGraph& graph, double p, std::uint64_t samples,
                                     std::uint64_t seed);

}  // namespace reference

namespace serial {

/// The breadth-first kernel without OpenMP; used by the benchmark.
CrossingEstimate estimate_crossing(const ProductGraph& graph, double p, std::uint64_t samples,
                                   std::uint64_t seed);

}  // namespace serial

}  // namespace treeline
