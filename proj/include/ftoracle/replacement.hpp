#pragma once

#include <span>
#include <vector>

#include "ftoracle/graph.hpp"
#include "ftoracle/shortest_path_tree.hpp"

namespace ftoracle {

// ||sv <> f||: exact s-v distance in G - f by a fresh Dijkstra.
Distance exact_replacement_distance(const Graph& g, VertexId s, VertexId v, EdgeId f);

// Ground-truth table of exact post-failure distances for a source set: one
// Dijkstra on G - f per source per tree edge f. Faults off the source's tree
// cannot lengthen any path from it and are answered from the base tree.
class ExactReplacementTable {
  public:
    ExactReplacementTable(const Graph& g, std::span<const VertexId> sources);

    std::span<const VertexId> sources() const { return sources_; }
    const ShortestPathTree& tree(VertexId s) const;

    Distance base(VertexId s, VertexId v) const;
    // f == kNoEdge means no failure.
    Distance lookup(VertexId s, VertexId v, EdgeId f) const;

  private:
    std::size_t source_slot(VertexId s) const;

    const Graph* g_;
    std::vector<VertexId> sources_;
    std::vector<std::uint32_t> slot_of_;
    std::vector<ShortestPathTree> trees_;
    // Per source: edge id -> row in rows_, or kNoVertex for non-tree edges.
    std::vector<std::vector<std::uint32_t>> row_of_edge_;
    std::vector<std::vector<std::vector<Distance>>> rows_;
};

} // namespace ftoracle
