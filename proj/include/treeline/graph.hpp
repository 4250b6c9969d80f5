#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace treeline {

enum class GraphKind { strip, slab };

std::string to_string(GraphKind kind);
GraphKind parse_graph_kind(const std::string& s);

/// Finite truncation of L_n x Z (strip) or of the radius-n ball of a
/// (d-1)-ary tree times Z (slab). The line is cut to levels -K..K.
struct SlabSpec {
    GraphKind kind = GraphKind::strip;
    int d = 3;  ///< slab only
    int n = 1;
    int K = 100;

    /// Children per tree node: 1 for the strip, d-1 for the slab.
    int arity() const { return kind == GraphKind::strip ? 1 : d - 1; }
    void validate() const;
};

struct Edge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;
    bool line = false;  ///< along a fiber (otherwise a tree edge / rung)
};

struct Arc {
    std::uint32_t to = 0;
    std::uint32_t edge = 0;
};

inline constexpr std::size_t kDefaultMaxVertices = std::size_t{1} << 24;

/// Immutable product graph. Tree nodes are numbered breadth-first (root 0,
/// children of node t at arity*t+1 .. arity*t+arity); vertex (t, k) has id
/// (k + K) * tree_nodes + t. Edges are sorted by (level, tree node, kind)
/// with the tree edge to the parent before the line edge to level k+1.
class ProductGraph {
public:
    explicit ProductGraph(const SlabSpec& spec, std::size_t max_vertices = kDefaultMaxVertices);

    const SlabSpec& spec() const { return spec_; }
    std::size_t tree_nodes() const { return tree_nodes_; }
    std::size_t levels() const { return static_cast<std::size_t>(2 * spec_.K + 1); }
    std::size_t num_vertices() const { return tree_nodes_ * levels(); }
    std::size_t num_edges() const { return edges_.size(); }
    std::span<const Edge> edges() const { return edges_; }

    std::uint32_t vertex(std::size_t tree_node, int level) const {
        return static_cast<std::uint32_t>(static_cast<std::size_t>(level + spec_.K) * tree_nodes_ +
                                          tree_node);
    }
    std::size_t tree_node_of(std::uint32_t v) const { return v % tree_nodes_; }
    int depth(std::size_t tree_node) const { return depth_[tree_node]; }

    std::span<const Arc> neighbors(std::uint32_t v) const {
        return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
    }

    /// (root, level 0)
    std::uint32_t origin() const { return vertex(0, 0); }
    /// First depth-n tree node in breadth-first order.
    std::size_t target_node() const { return first_leaf_; }
    std::size_t first_leaf() const { return first_leaf_; }
    std::size_t leaf_count() const { return tree_nodes_ - first_leaf_; }

private:
    SlabSpec spec_;
    std::size_t tree_nodes_ = 0;
    std::size_t first_leaf_ = 0;
    std::vector<int> depth_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<Arc> arcs_;
};

ProductGraph build_graph(const SlabSpec& spec, std::size_t max_vertices = kDefaultMaxVertices);

}  // namespace treeline
