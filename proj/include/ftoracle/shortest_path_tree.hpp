#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "ftoracle/graph.hpp"
#include "ftoracle/types.hpp"

namespace ftoracle {

struct TreeNode {
    VertexId vertex;
    VertexId parent;  // kNoVertex for the root
    EdgeId parent_edge;  // kNoEdge for the root
    Distance dist;
    std::uint32_t hops;
};

// Rooted shortest-path tree over the present vertices of a graph. A full tree
// holds every vertex reachable from the root; a truncated tree holds only a
// requested ball. Nodes are kept in settle order, so parents precede children.
class ShortestPathTree {
  public:
    ShortestPathTree() = default;
    // Takes ownership of nodes in settle order (nodes[0] is the root).
    // truncated selects a hashed vertex index instead of a dense one.
    ShortestPathTree(std::size_t graph_size, std::vector<TreeNode> nodes, bool truncated);

    VertexId root() const { return nodes_.front().vertex; }
    std::size_t graph_size() const { return n_; }
    std::size_t size() const { return nodes_.size(); }
    bool truncated() const { return truncated_; }

    // Position of v in nodes(), or kNoVertex when absent.
    std::uint32_t local_index(VertexId v) const;
    bool contains(VertexId v) const { return local_index(v) != kNoVertex; }

    // kUnreachable when v is absent.
    Distance dist(VertexId v) const;
    // The following throw InputError when v is absent.
    std::uint32_t hops(VertexId v) const;
    VertexId parent(VertexId v) const;
    EdgeId parent_edge(VertexId v) const;
    const TreeNode& node(VertexId v) const;

    std::span<const TreeNode> nodes() const { return nodes_; }

    // Vertices root..v along the tree path.
    std::vector<VertexId> path_from_root(VertexId v) const;

  private:
    std::size_t n_ = 0;
    bool truncated_ = false;
    std::vector<TreeNode> nodes_;
    std::vector<std::uint32_t> dense_;
    std::unordered_map<VertexId, std::uint32_t> sparse_;
};

// Reusable Dijkstra state for repeated runs on one graph. Paths are unique:
// candidates are ordered by (length, hop count, edge perturbation), where the
// perturbation gives edge e an infinitesimal extra weight proportional to 2^e.
// All three keys are additive, so the resulting path system is symmetric and
// closed under subpaths.
class DijkstraEngine {
  public:
    explicit DijkstraEngine(const Graph& g);

    // Runs from root in G - avoid (kNoEdge removes nothing).
    void run(VertexId root, EdgeId avoid = kNoEdge);

    Distance dist(VertexId v) const { return dist_[v]; }
    std::uint32_t hops(VertexId v) const { return hops_[v]; }
    VertexId parent(VertexId v) const { return parent_[v]; }
    EdgeId parent_edge(VertexId v) const { return parent_edge_[v]; }
    bool reached(VertexId v) const { return dist_[v] != kUnreachable; }
    // Reached vertices in settle order.
    std::span<const VertexId> order() const { return order_; }

    ShortestPathTree tree() const;

  private:
    bool perturbation_prefers(VertexId u, EdgeId via, VertexId current_parent, EdgeId current_edge) const;

    const Graph* g_;
    std::vector<Distance> dist_;
    std::vector<std::uint32_t> hops_;
    std::vector<VertexId> parent_;
    std::vector<EdgeId> parent_edge_;
    std::vector<char> settled_;
    std::vector<VertexId> order_;
    struct HeapItem {
        Distance dist;
        std::uint32_t hops;
        VertexId vertex;
        bool operator>(const HeapItem& o) const {
            if (dist != o.dist) {
                return dist > o.dist;
            }
            if (hops != o.hops) {
                return hops > o.hops;
            }
            return vertex > o.vertex;
        }
    };
    std::vector<HeapItem> heap_;
};

// Canonical shortest-path tree of g (optionally with one edge removed).
ShortestPathTree canonical_dijkstra(const Graph& g, VertexId root, EdgeId avoid = kNoEdge);

// Truncated canonical tree: paths are computed over all of g, but only the
// ball's vertices are kept. The ball must contain root.
ShortestPathTree canonical_dijkstra(const Graph& g, VertexId root, std::span<const VertexId> ball);

} // namespace ftoracle
