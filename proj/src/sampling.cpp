// Breadth-first crossing kernels. Edge states are drawn lazily, only for
// edges incident to the explored cluster.

#include <algorithm>
#include <cmath>

#include "sampling_detail.hpp"
#include "treeline/errors.hpp"
#include "treeline/percolation.hpp"
#include "treeline/rng.hpp"

namespace treeline {

namespace detail {

ClusterScratch::ClusterScratch(const ProductGraph& graph)
    : stamp(graph.num_vertices(), 0), fiber_stamp(graph.tree_nodes(), 0) {
    queue.reserve(256);
}

void ClusterScratch::next_epoch() {
    if (++epoch == 0) {
        std::fill(stamp.begin(), stamp.end(), 0);
        std::fill(fiber_stamp.begin(), fiber_stamp.end(), 0);
        epoch = 1;
    }
}

bool crosses(const ProductGraph& g, std::uint64_t key, std::uint64_t threshold,
             ClusterScratch& s) {
    s.next_epoch();
    const std::size_t target = g.target_node();
    s.queue.clear();
    s.queue.push_back(g.origin());
    s.stamp[g.origin()] = s.epoch;
    for (std::size_t head = 0; head < s.queue.size(); ++head) {
        for (const Arc& a : g.neighbors(s.queue[head])) {
            if (s.stamp[a.to] == s.epoch) continue;
            if (!rng::edge_open(key, a.edge, threshold)) continue;
            if (g.tree_node_of(a.to) == target) return true;
            s.stamp[a.to] = s.epoch;
            s.queue.push_back(a.to);
        }
    }
    return false;
}

OffspringSample offspring(const ProductGraph& g, std::uint64_t key, std::uint64_t threshold,
                          ClusterScratch& s) {
    s.next_epoch();
    const std::size_t first_leaf = g.first_leaf();
    const std::size_t target = g.target_node();
    OffspringSample out;
    s.queue.clear();
    s.queue.push_back(g.origin());
    s.stamp[g.origin()] = s.epoch;
    for (std::size_t head = 0; head < s.queue.size(); ++head) {
        const std::uint32_t v = s.queue[head];
        const std::size_t t = g.tree_node_of(v);
        if (t >= first_leaf && s.fiber_stamp[t] != s.epoch) {
            s.fiber_stamp[t] = s.epoch;
            ++out.reached;
            if (t == target) out.target_reached = true;
        }
        for (const Arc& a : g.neighbors(v)) {
            if (s.stamp[a.to] == s.epoch) continue;
            if (!rng::edge_open(key, a.edge, threshold)) continue;
            s.stamp[a.to] = s.epoch;
            s.queue.push_back(a.to);
        }
    }
    return out;
}

std::uint64_t chunk_count(std::uint64_t samples) { return (samples + kChunkSize - 1) / kChunkSize; }

std::uint64_t chunk_length(std::uint64_t samples, std::uint64_t chunk) {
    return std::min(kChunkSize, samples - chunk * kChunkSize);
}

void validate_run(double p, std::uint64_t samples) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
    if (samples < 1) throw DomainError("samples must be >= 1");
}

OffspringEstimate finish_offspring(const ProductGraph& g, const OffspringTally& tally,
                                   std::uint64_t samples, std::uint64_t seed) {
    OffspringEstimate est;
    const double n = static_cast<double>(samples);
    const double s1 = static_cast<double>(tally.sum);
    const double s2 = static_cast<double>(tally.sum_sq);
    est.mean = s1 / n;
    const double var = samples > 1 ? std::max(0.0, (s2 - s1 * s1 / n) / (n - 1.0)) : 0.0;
    est.std_error = std::sqrt(var / n);
    est.samples = samples;
    est.n = g.spec().n;
    est.d = g.spec().d;
    est.leaf_crossing = make_crossing_estimate(tally.target_hits, samples, seed);
    return est;
}

}  // namespace detail

CrossingEstimate make_crossing_estimate(std::uint64_t successes, std::uint64_t samples,
                                        std::uint64_t seed) {
    CrossingEstimate est;
    est.successes = successes;
    est.samples = samples;
    est.seed = seed;
    est.p_hat = static_cast<double>(successes) / static_cast<double>(samples);
    est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(samples));
    return est;
}

CrossingEstimate estimate_crossing(const ProductGraph& graph, double p, std::uint64_t samples,
                                   std::uint64_t seed) {
    detail::validate_run(p, samples);
    const std::uint64_t threshold = rng::open_threshold(p);
    const auto chunks = static_cast<std::int64_t>(detail::chunk_count(samples));
    std::uint64_t successes = 0;
#pragma omp parallel reduction(+ : successes)
    {
        detail::ClusterScratch scratch(graph);
#pragma omp for schedule(dynamic)
        for (std::int64_t c = 0; c < chunks; ++c) {
            const auto chunk = static_cast<std::uint64_t>(c);
            const std::uint64_t cs = rng::chunk_seed(seed, chunk);
            const std::uint64_t len = detail::chunk_length(samples, chunk);
            for (std::uint64_t i = 0; i < len; ++i)
                successes += detail::crosses(graph, rng::sample_key(cs, i), threshold, scratch);
        }
    }
    return make_crossing_estimate(successes, samples, seed);
}

CrossingEstimate estimate_crossing(const SlabSpec& spec, double p, std::uint64_t samples,
                                   std::uint64_t seed) {
    return estimate_crossing(ProductGraph(spec), p, samples, seed);
}

OffspringEstimate estimate_offspring(const ProductGraph& graph, double p, std::uint64_t samples,
                                     std::uint64_t seed) {
    if (graph.spec().kind != GraphKind::slab)
        throw DomainError("offspring counts are defined on the slab");
    detail::validate_run(p, samples);
    const std::uint64_t threshold = rng::open_threshold(p);
    const auto chunks = static_cast<std::int64_t>(detail::chunk_count(samples));
    std::uint64_t sum = 0;
    std::uint64_t sum_sq = 0;
    std::uint64_t hits = 0;
#pragma omp parallel reduction(+ : sum, sum_sq, hits)
    {
        detail::ClusterScratch scratch(graph);
#pragma omp for schedule(dynamic)
        for (std::int64_t c = 0; c < chunks; ++c) {
            const auto chunk = static_cast<std::uint64_t>(c);
            const std::uint64_t cs = rng::chunk_seed(seed, chunk);
            const std::uint64_t len = detail::chunk_length(samples, chunk);
            for (std::uint64_t i = 0; i < len; ++i) {
                const auto s = detail::offspring(graph, rng::sample_key(cs, i), threshold, scratch);
                sum += s.reached;
                sum_sq += s.reached * s.reached;
                hits += s.target_reached;
            }
        }
    }
    return detail::finish_offspring(graph, {sum, sum_sq, hits}, samples, seed);
}

OffspringEstimate estimate_offspring(const SlabSpec& spec, double p, std::uint64_t samples,
                                     std::uint64_t seed) {
    return estimate_offspring(ProductGraph(spec), p, samples, seed);
}

namespace serial {

CrossingEstimate estimate_crossing(const ProductGraph& graph, double p, std::uint64_t samples,
                                   std::uint64_t seed) {
    detail::validate_run(p, samples);
    const std::uint64_t threshold = rng::open_threshold(p);
    detail::ClusterScratch scratch(graph);
    std::uint64_t successes = 0;
    for (std::uint64_t c = 0; c < detail::chunk_count(samples); ++c) {
        const std::uint64_t cs = rng::chunk_seed(seed, c);
        const std::uint64_t len = detail::chunk_length(samples, c);
        for (std::uint64_t i = 0; i < len; ++i)
            successes += detail::crosses(graph, rng::sample_key(cs, i), threshold, scratch);
    }
    return make_crossing_estimate(successes, samples, seed);
}

}  // namespace serial

}  // namespace treeline
