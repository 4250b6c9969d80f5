// Serial reference: samples every edge and merges clusters with union-find.

#include <algorithm>
#include <numeric>
#include <vector>

#include "sampling_detail.hpp"
#include "treeline/percolation.hpp"
#include "treeline/rng.hpp"

namespace treeline::reference {

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { reset(); }

    void reset() {
        std::iota(parent_.begin(), parent_.end(), 0u);
        std::fill(size_.begin(), size_.end(), 1u);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

void sample_clusters(const ProductGraph& g, std::uint64_t key, std::uint64_t threshold,
                     UnionFind& uf) {
    uf.reset();
    const auto edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (rng::edge_open(key, static_cast<std::uint32_t>(e), threshold))
            uf.unite(edges[e].u, edges[e].v);
}

bool fiber_connected(const ProductGraph& g, std::size_t tree_node, std::uint32_t root,
                     UnionFind& uf) {
    const int K = g.spec().K;
    for (int k = -K; k <= K; ++k)
        if (uf.find(g.vertex(tree_node, k)) == root) return true;
    return false;
}

}  // namespace

CrossingEstimate estimate_crossing(const ProductGraph& graph, double p, std::uint64_t samples,
                                   std::uint64_t seed) {
    detail::validate_run(p, samples);
    const std::uint64_t threshold = rng::open_threshold(p);
    UnionFind uf(graph.num_vertices());
    std::uint64_t successes = 0;
    for (std::uint64_t c = 0; c < detail::chunk_count(samples); ++c) {
        const std::uint64_t cs = rng::chunk_seed(seed, c);
        const std::uint64_t len = detail::chunk_length(samples, c);
        for (std::uint64_t i = 0; i < len; ++i) {
            sample_clusters(graph, rng::sample_key(cs, i), threshold, uf);
            const std::uint32_t root = uf.find(graph.origin());
            successes += fiber_connected(graph, graph.target_node(), root, uf);
        }
    }
    return make_crossing_estimate(successes, samples, seed);
}

OffspringEstimate estimate_offspring(const ProductGraph& graph, double p, std::uint64_t samples,
                                     std::uint64_t seed) {
    detail::validate_run(p, samples);
    const std::uint64_t threshold = rng::open_threshold(p);
    UnionFind uf(graph.num_vertices());
    detail::OffspringTally tally;
    for (std::uint64_t c = 0; c < detail::chunk_count(samples); ++c) {
        const std::uint64_t cs = rng::chunk_seed(seed, c);
        const std::uint64_t len = detail::chunk_length(samples, c);
        for (std::uint64_t i = 0; i < len; ++i) {
            sample_clusters(graph, rng::sample_key(cs, i), threshold, uf);
            const std::uint32_t root = uf.find(graph.origin());
            std::uint64_t reached = 0;
            for (std::size_t t = graph.first_leaf(); t < graph.tree_nodes(); ++t) {
                if (fiber_connected(graph, t, root, uf)) {
                    ++reached;
                    if (t == graph.target_node()) ++tally.target_hits;
                }
            }
            tally.sum += reached;
            tally.sum_sq += reached * reached;
        }
    }
    return detail::finish_offspring(graph, tally, samples, seed);
}

}  // namespace treeline::reference
