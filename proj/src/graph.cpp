#include "treeline/graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "treeline/errors.hpp"

namespace treeline {

std::string to_string(GraphKind kind) { return kind == GraphKind::strip ? "strip" : "slab"; }

GraphKind parse_graph_kind(const std::string& s) {
    if (s == "strip") return GraphKind::strip;
    if (s == "slab") return GraphKind::slab;
    throw DomainError("unknown graph kind '" + s + "' (expected strip or slab)");
}

void SlabSpec::validate() const {
    if (n < 1) throw DomainError("graph depth n must be >= 1");
    if (K < 0) throw DomainError("line cutoff K must be >= 0");
    if (kind == GraphKind::slab && d < 3) throw DomainError("slab needs tree degree d >= 3");
}

ProductGraph::ProductGraph(const SlabSpec& spec, std::size_t max_vertices) : spec_(spec) {
    spec_.validate();
    const std::size_t arity = static_cast<std::size_t>(spec_.arity());
    const std::size_t levels_count = static_cast<std::size_t>(2 * spec_.K + 1);
    const std::size_t limit = std::min<std::size_t>(max_vertices,
                                                    std::numeric_limits<std::uint32_t>::max());

    // count tree nodes level by level, bailing out before overflow
    std::size_t width = 1;
    for (int depth = 0; depth <= spec_.n; ++depth) {
        if (depth == spec_.n) first_leaf_ = tree_nodes_;
        tree_nodes_ += width;
        if (tree_nodes_ * levels_count > limit)
            throw CapacityError("product graph would exceed " + std::to_string(limit) +
                                " vertices");
        depth_.insert(depth_.end(), width, depth);
        width *= arity;
    }

    const int K = spec_.K;
    for (int k = -K; k <= K; ++k) {
        for (std::size_t t = 0; t < tree_nodes_; ++t) {
            if (t > 0) edges_.push_back({vertex((t - 1) / arity, k), vertex(t, k), false});
            if (depth_[t] <= spec_.n - 1 && k < K)
                edges_.push_back({vertex(t, k), vertex(t, k + 1), true});
        }
    }
    if (edges_.size() > std::numeric_limits<std::uint32_t>::max())
        throw CapacityError("too many edges for 32-bit edge ids");

    const std::size_t nv = num_vertices();
    offsets_.assign(nv + 1, 0);
    for (const Edge& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    for (std::size_t v = 0; v < nv; ++v) offsets_[v + 1] += offsets_[v];
    arcs_.resize(offsets_[nv]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto id = static_cast<std::uint32_t>(i);
        arcs_[fill[edges_[i].u]++] = {edges_[i].v, id};
        arcs_[fill[edges_[i].v]++] = {edges_[i].u, id};
    }
}

ProductGraph build_graph(const SlabSpec& spec, std::size_t max_vertices) {
    return ProductGraph(spec, max_vertices);
}

}  // namespace treeline
