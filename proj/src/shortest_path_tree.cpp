#include "ftoracle/shortest_path_tree.hpp"

#include <algorithm>
#include <functional>

namespace ftoracle {

ShortestPathTree::ShortestPathTree(std::size_t graph_size, std::vector<TreeNode> nodes, bool truncated)
    : n_(graph_size), truncated_(truncated), nodes_(std::move(nodes)) {
    if (nodes_.empty()) {
        throw InputError("a shortest-path tree needs at least its root");
    }
    if (truncated_) {
        sparse_.reserve(nodes_.size());
        for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
            sparse_.emplace(nodes_[i].vertex, i);
        }
    } else {
        dense_.assign(n_, kNoVertex);
        for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
            dense_[nodes_[i].vertex] = i;
        }
    }
}

std::uint32_t ShortestPathTree::local_index(VertexId v) const {
    if (!truncated_) {
        return v < dense_.size() ? dense_[v] : kNoVertex;
    }
    auto it = sparse_.find(v);
    return it == sparse_.end() ? kNoVertex : it->second;
}

Distance ShortestPathTree::dist(VertexId v) const {
    auto i = local_index(v);
    return i == kNoVertex ? kUnreachable : nodes_[i].dist;
}

const TreeNode& ShortestPathTree::node(VertexId v) const {
    auto i = local_index(v);
    if (i == kNoVertex) {
        throw InputError("vertex " + std::to_string(v) + " is not present in the tree rooted at " +
                         std::to_string(root()));
    }
    return nodes_[i];
}

std::uint32_t ShortestPathTree::hops(VertexId v) const { return node(v).hops; }
VertexId ShortestPathTree::parent(VertexId v) const { return node(v).parent; }
EdgeId ShortestPathTree::parent_edge(VertexId v) const { return node(v).parent_edge; }

std::vector<VertexId> ShortestPathTree::path_from_root(VertexId v) const {
    std::vector<VertexId> path;
    path.reserve(hops(v) + 1);
    for (VertexId x = v; x != kNoVertex; x = node(x).parent) {
        path.push_back(x);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

DijkstraEngine::DijkstraEngine(const Graph& g)
    : g_(&g),
      dist_(g.num_vertices(), kUnreachable),
      hops_(g.num_vertices(), 0),
      parent_(g.num_vertices(), kNoVertex),
      parent_edge_(g.num_vertices(), kNoEdge),
      settled_(g.num_vertices(), 0) {}

bool DijkstraEngine::perturbation_prefers(VertexId u, EdgeId via, VertexId current_parent,
                                          EdgeId current_edge) const {
    // Both candidates have equal length and hops. Compare the largest edge id
    // in each side of the symmetric difference of the two paths; the side
    // holding the overall maximum carries the larger perturbation.
    VertexId a = u;
    VertexId b = current_parent;
    EdgeId max_a = via;
    EdgeId max_b = current_edge;
    while (hops_[a] > hops_[b]) {
        max_a = std::max(max_a, parent_edge_[a]);
        a = parent_[a];
    }
    while (hops_[b] > hops_[a]) {
        max_b = std::max(max_b, parent_edge_[b]);
        b = parent_[b];
    }
    while (a != b) {
        max_a = std::max(max_a, parent_edge_[a]);
        a = parent_[a];
        max_b = std::max(max_b, parent_edge_[b]);
        b = parent_[b];
    }
    return max_a < max_b;
}

void DijkstraEngine::run(VertexId root, EdgeId avoid) {
    g_->require_vertex(root);
    for (VertexId v : order_) {
        dist_[v] = kUnreachable;
        hops_[v] = 0;
        parent_[v] = kNoVertex;
        parent_edge_[v] = kNoEdge;
        settled_[v] = 0;
    }
    // Vertices touched but never settled (none in a finished run) are covered
    // by the order list because every reached vertex gets settled.
    order_.clear();
    heap_.clear();

    dist_[root] = 0.0;
    heap_.push_back({0.0, 0, root});
    const auto cmp = std::greater<HeapItem>{};
    while (!heap_.empty()) {
        std::pop_heap(heap_.begin(), heap_.end(), cmp);
        HeapItem top = heap_.back();
        heap_.pop_back();
        VertexId u = top.vertex;
        if (settled_[u] || top.dist != dist_[u] || top.hops != hops_[u]) {
            continue;
        }
        settled_[u] = 1;
        order_.push_back(u);
        for (const Incidence& inc : g_->incident(u)) {
            if (inc.edge == avoid) {
                continue;
            }
            VertexId x = inc.neighbor;
            if (settled_[x]) {
                continue;
            }
            Distance nd = top.dist + g_->edge(inc.edge).w;
            std::uint32_t nh = top.hops + 1;
            if (nd < dist_[x] || (nd == dist_[x] && nh < hops_[x])) {
                dist_[x] = nd;
                hops_[x] = nh;
                parent_[x] = u;
                parent_edge_[x] = inc.edge;
                heap_.push_back({nd, nh, x});
                std::push_heap(heap_.begin(), heap_.end(), cmp);
            } else if (nd == dist_[x] && nh == hops_[x] &&
                       perturbation_prefers(u, inc.edge, parent_[x], parent_edge_[x])) {
                parent_[x] = u;
                parent_edge_[x] = inc.edge;
            }
        }
    }
}

ShortestPathTree DijkstraEngine::tree() const {
    std::vector<TreeNode> nodes;
    nodes.reserve(order_.size());
    for (VertexId v : order_) {
        nodes.push_back({v, parent_[v], parent_edge_[v], dist_[v], hops_[v]});
    }
    return ShortestPathTree(g_->num_vertices(), std::move(nodes), false);
}

ShortestPathTree canonical_dijkstra(const Graph& g, VertexId root, EdgeId avoid) {
    DijkstraEngine engine(g);
    engine.run(root, avoid);
    return engine.tree();
}

ShortestPathTree canonical_dijkstra(const Graph& g, VertexId root, std::span<const VertexId> ball) {
    g.require_vertex(root);
    std::vector<char> in_ball(g.num_vertices(), 0);
    std::size_t distinct = 0;
    for (VertexId v : ball) {
        g.require_vertex(v);
        distinct += in_ball[v] ? 0 : 1;
        in_ball[v] = 1;
    }
    if (!in_ball[root]) {
        throw InputError("ball of vertex " + std::to_string(root) + " does not contain its root");
    }
    DijkstraEngine engine(g);
    engine.run(root);
    std::vector<TreeNode> nodes;
    nodes.reserve(ball.size());
    for (VertexId v : engine.order()) {
        if (in_ball[v]) {
            nodes.push_back({v, engine.parent(v), engine.parent_edge(v), engine.dist(v), engine.hops(v)});
        }
    }
    if (nodes.size() != distinct) {
        throw InputError("ball of vertex " + std::to_string(root) + " contains unreachable vertices");
    }
    return ShortestPathTree(g.num_vertices(), std::move(nodes), true);
}

} // namespace ftoracle
