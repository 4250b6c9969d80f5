#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "treeline/errors.hpp"
#include "treeline/percolation.hpp"

namespace treeline {

namespace {

struct SmallGraph {
    // adj[v] lists (neighbor, edge bit)
    std::vector<std::vector<std::pair<int, std::uint32_t>>> adj;
    int origin = 0;
    std::uint64_t target_mask = 0;
};

SmallGraph compact(const ProductGraph& g) {
    if (g.num_edges() > kMaxExactEdges)
        throw CapacityError("exact enumeration supports at most " +
                            std::to_string(kMaxExactEdges) + " edges, graph has " +
                            std::to_string(g.num_edges()));
    if (g.num_vertices() > 64) throw CapacityError("exact enumeration supports at most 64 vertices");
    SmallGraph s;
    s.adj.resize(g.num_vertices());
    const auto edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const std::uint32_t bit = std::uint32_t{1} << e;
        s.adj[edges[e].u].push_back({static_cast<int>(edges[e].v), bit});
        s.adj[edges[e].v].push_back({static_cast<int>(edges[e].u), bit});
    }
    s.origin = static_cast<int>(g.origin());
    for (int k = -g.spec().K; k <= g.spec().K; ++k)
        s.target_mask |= std::uint64_t{1} << g.vertex(g.target_node(), k);
    return s;
}

bool crosses(const SmallGraph& s, std::uint32_t open) {
    std::uint64_t seen = std::uint64_t{1} << s.origin;
    std::uint64_t frontier = seen;
    while (frontier) {
        const int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        for (const auto& [w, bit] : s.adj[v]) {
            if (!(open & bit)) continue;
            const std::uint64_t wb = std::uint64_t{1} << w;
            if (seen & wb) continue;
            if (s.target_mask & wb) return true;
            seen |= wb;
            frontier |= wb;
        }
    }
    return false;
}

}  // namespace

CrossingPolynomial crossing_polynomial(const ProductGraph& graph) {
    const SmallGraph s = compact(graph);
    const std::size_t E = graph.num_edges();
    CrossingPolynomial counts(E + 1, 0);
    const auto configs = static_cast<std::int64_t>(std::uint64_t{1} << E);
#pragma omp parallel
    {
        CrossingPolynomial local(E + 1, 0);
#pragma omp for schedule(static)
        for (std::int64_t m = 0; m < configs; ++m) {
            const auto open = static_cast<std::uint32_t>(m);
            if (crosses(s, open)) ++local[static_cast<std::size_t>(std::popcount(open))];
        }
#pragma omp critical
        for (std::size_t j = 0; j <= E; ++j) counts[j] += local[j];
    }
    return counts;
}

double evaluate_crossing_polynomial(const CrossingPolynomial& counts, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
    const int E = static_cast<int>(counts.size()) - 1;
    double total = 0.0;
    for (int j = 0; j <= E; ++j)
        if (counts[j])
            total += static_cast<double>(counts[j]) * std::pow(p, j) * std::pow(1.0 - p, E - j);
    return total;
}

double exact_crossing(const SlabSpec& spec, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
    return evaluate_crossing_polynomial(crossing_polynomial(ProductGraph(spec)), p);
}

}  // namespace treeline
