#pragma once

#include <cstdint>
#include <vector>

#include "treeline/graph.hpp"
#include "treeline/percolation.hpp"

namespace treeline::detail {

/// Per-worker visitation marks. Epoch stamps avoid clearing between samples.
struct ClusterScratch {
    explicit ClusterScratch(const ProductGraph& graph);
    void next_epoch();

    std::vector<std::uint32_t> stamp;
    std::vector<std::uint32_t> fiber_stamp;
    std::vector<std::uint32_t> queue;
    std::uint32_t epoch = 0;
};

struct OffspringSample {
    std::uint64_t reached = 0;
    bool target_reached = false;
};

struct OffspringTally {
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
    std::uint64_t target_hits = 0;
};

bool crosses(const ProductGraph& g, std::uint64_t key, std::uint64_t threshold,
             ClusterScratch& scratch);
OffspringSample offspring(const ProductGraph& g, std::uint64_t key, std::uint64_t threshold,
                          ClusterScratch& scratch);

std::uint64_t chunk_count(std::uint64_t samples);
std::uint64_t chunk_length(std::uint64_t samples, std::uint64_t chunk);
void validate_run(double p, std::uint64_t samples);
OffspringEstimate finish_offspring(const ProductGraph& g, const OffspringTally& tally,
                                   std::uint64_t samples, std::uint64_t seed);

}  // namespace treeline::detail
