#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "ftoracle/graph.hpp"
#include "ftoracle/shortest_path_tree.hpp"

namespace ftoracle {

// Stored form of one replacement path anchor..target in G - f, where the
// anchor is the root of the tree the entry was computed from. The path is
// canonical(anchor, bridge_tail) + edge(bridge_tail, bridge_head) +
// canonical(bridge_head, target). bridge_tail == kNoVertex means the path is
// the single canonical path anchor..target.
struct ReplacementEntry {
    Distance length = kUnreachable;
    VertexId bridge_tail = kNoVertex;
    VertexId bridge_head = kNoVertex;
};

// Builds the entry for target from a finished run of engine rooted at
// base.root() in G - f. The bridge edge follows the longest prefix of the
// replacement path that coincides with the canonical path in base.
ReplacementEntry describe_replacement(const DijkstraEngine& engine, const ShortestPathTree& base, VertexId target);

// A path of at most two canonical segments joined by at most one edge,
// oriented source -> target.
struct PathDescriptor {
    VertexId source = kNoVertex;
    VertexId target = kNoVertex;
    VertexId bridge_tail = kNoVertex;  // kNoVertex: single segment
    VertexId bridge_head = kNoVertex;
    EdgeId avoided = kNoEdge;
    Distance total_length = 0.0;

    bool has_bridge() const { return bridge_tail != kNoVertex; }
    PathDescriptor reversed() const;

    static PathDescriptor canonical(VertexId source, VertexId target, Distance length, EdgeId avoided = kNoEdge);
    static PathDescriptor from_entry(VertexId anchor, VertexId target, const ReplacementEntry& e, EdgeId avoided);
};

class UnreachableError : public DomainError {
  public:
    using DomainError::DomainError;
};

// Descriptor of the canonical replacement path s..t in G - f. Throws
// UnreachableError when f disconnects s from t.
PathDescriptor decompose_replacement(const Graph& g, VertexId s, VertexId t, EdgeId f);

// Supplies canonical paths between arbitrary endpoints. Looks in the trees
// handed to it by the lookup callback first and builds any missing tree on
// demand (cached).
class CanonicalPaths {
  public:
    using TreeLookup = std::function<const ShortestPathTree*(VertexId root)>;

    explicit CanonicalPaths(const Graph& g, TreeLookup lookup = {}) : g_(&g), lookup_(std::move(lookup)) {}

    // Vertex sequence from..to; empty when to is unreachable from from.
    std::vector<VertexId> path(VertexId from, VertexId to);

  private:
    const ShortestPathTree* find(VertexId root) const;

    const Graph* g_;
    TreeLookup lookup_;
    std::map<VertexId, ShortestPathTree> cache_;
};

// Explicit walk for d, validated: consecutive vertices adjacent, the avoided
// edge unused, summed weight equal to total_length. Throws IntegrityError on
// any mismatch.
std::vector<VertexId> expand(const PathDescriptor& d, const Graph& g, CanonicalPaths& paths);

// Concatenates the expansions of consecutive descriptors (each leg must start
// where the previous ended) and validates the whole walk against the sum of
// leg lengths.
std::vector<VertexId> expand_walk(std::span<const PathDescriptor> legs, const Graph& g, CanonicalPaths& paths);

// Sum of edge weights along a walk; throws IntegrityError on a non-edge step
// or on use of the avoided edge.
Distance walk_length(std::span<const VertexId> walk, const Graph& g, EdgeId avoided);

} // namespace ftoracle
