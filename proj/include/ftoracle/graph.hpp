#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ftoracle/types.hpp"

namespace ftoracle {

struct Edge {
    VertexId u;
    VertexId v;
    Distance w;

    VertexId other(VertexId x) const { return x == u ? v : u; }
};

struct Incidence {
    VertexId neighbor;
    EdgeId edge;
};

// Immutable undirected graph with positive weights. Vertex ids are 0..n-1,
// edge ids are positions in the input edge list.
class Graph {
  public:
    Graph() = default;
    // Throws InputError on self-loops, duplicate pairs, out-of-range ids or
    // non-positive / non-finite weights.
    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t num_vertices() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }

    const Edge& edge(EdgeId e) const { return edges_.at(e); }
    std::span<const Edge> edges() const { return edges_; }

    std::span<const Incidence> incident(VertexId v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }

    // Symmetric: find_edge(u, v) == find_edge(v, u).
    std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;

    bool valid_vertex(VertexId v) const { return v < n_; }
    void require_vertex(VertexId v) const;
    void require_edge(EdgeId e) const;

    // Content hash of the normalized edge list (endpoints ordered, sorted).
    std::uint64_t digest() const;

  private:
    static std::uint64_t pair_key(VertexId u, VertexId v);

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Incidence> adjacency_;
    std::unordered_map<std::uint64_t, EdgeId> lookup_;
};

// Reads either DIMACS shortest-path text (`c` comments, `p sp n m`, `a u v w`
// with 1-based ids) or a plain `u v w` edge list with 0-based ids. The format
// is chosen from the first non-comment line. Errors name the offending line.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);

// Writes DIMACS text (1-based ids).
void write_dimacs(std::ostream& out, const Graph& g);

} // namespace ftoracle
