#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "ftoracle/shortest_path_tree.hpp"

namespace ftoracle {

// Operation tally for one query; lets tests assert constant query cost.
struct QueryCounters {
    std::uint32_t lca_queries = 0;
    std::uint32_t table_reads = 0;
};

// First and last Euler tour positions of a vertex, with its depth. a is the
// LCA of (v, a) exactly when a's span encloses v's.
struct TourSpan {
    std::uint32_t first = kNoVertex;
    std::uint32_t last = 0;
    std::uint32_t depth = 0;

    bool present() const { return first != kNoVertex; }
    bool encloses(const TourSpan& v) const { return first <= v.first && v.last <= last; }
};

// Constant-time LCA over the present vertices of a ShortestPathTree via an
// Euler tour and a sparse min-table over tour depths. The index works on the
// tree's local vertex positions; callers pass the same tree it was built from.
class LcaIndex {
  public:
    LcaIndex() = default;
    // Throws ConstructionError if the present vertices do not form a subtree
    // containing the root.
    explicit LcaIndex(const ShortestPathTree& t);

    // Local-position queries.
    std::uint32_t lca_local(std::uint32_t x, std::uint32_t y) const;
    bool is_ancestor_local(std::uint32_t a, std::uint32_t v) const { return span_[a].encloses(span_[v]); }
    const TourSpan& span_local(std::uint32_t x) const { return span_[x]; }

    std::size_t tour_length() const { return tour_.size(); }
    // Stored integers (tour, positions, sparse table), for size accounting.
    std::size_t footprint() const;

  private:
    std::vector<std::uint32_t> tour_;
    std::vector<TourSpan> span_;  // per local vertex
    std::vector<std::vector<std::uint32_t>> sparse_;  // sparse_[k][i]: min-depth local in tour[i, i + 2^k)
};

// A shortest-path tree paired with its LCA index.
class IndexedTree {
  public:
    IndexedTree() = default;
    explicit IndexedTree(ShortestPathTree t);

    const ShortestPathTree& tree() const { return tree_; }
    const LcaIndex& index() const { return index_; }
    VertexId root() const { return tree_.root(); }
    bool contains(VertexId v) const { return tree_.contains(v); }

    // Throws InputError when x or y is absent.
    VertexId lca(VertexId x, VertexId y, QueryCounters* counters = nullptr) const;

    // True iff edge (a, b) lies on the tree path root..v. Answered by three
    // checks: lca(v, a) == a, lca(v, b) == b, and |hops(a) - hops(b)| == 1.
    // Throws InputError when v, a or b is absent.
    bool edge_on_path(VertexId v, VertexId a, VertexId b, QueryCounters* counters = nullptr) const;

    // Same test, but an absent endpoint or target means "not on the path".
    bool edge_on_path_if_present(VertexId v, VertexId a, VertexId b, QueryCounters* counters = nullptr) const;

    // For an edge (a, b) already known to lie on a root path: its position
    // from the root, min(hops(a), hops(b)) + 1.
    std::uint32_t path_edge_index(VertexId a, VertexId b) const {
        return std::min(span(a).depth, span(b).depth) + 1;
    }

    // True iff a is an ancestor of v (or v itself).
    bool is_ancestor(VertexId a, VertexId v) const;

    // Stored words, index plus the per-vertex copy.
    std::size_t footprint() const { return index_.footprint() + 5 * by_vertex_.size(); }

    // Spans of v, kNoVertex-first when absent.
    TourSpan span(VertexId v) const { return record(v).span; }
    // ||root v||, kUnreachable when absent.
    Distance dist(VertexId v) const { return record(v).dist; }

  private:
    ShortestPathTree tree_;
    LcaIndex index_;
    struct Record {
        TourSpan span;
        Distance dist = kUnreachable;
    };
    Record record(VertexId v) const;

    // Full trees copy spans and distances out by vertex id, so a query touches
    // one record per vertex.
    std::vector<Record> by_vertex_;
};

// Edge tests over a forest of trees with pairwise disjoint vertex sets, such
// as the truncated trees of a ball partition. Keeps one record per graph
// vertex (its tree's root and its tour span there), so a test reads three
// records from one dense array whatever the number of trees.
class BallForest {
  public:
    BallForest() = default;
    // Throws ConstructionError when two trees share a vertex.
    BallForest(std::size_t graph_size, std::span<const IndexedTree> trees);

    // Root of the tree holding v, or kNoVertex.
    VertexId owner(VertexId v) const { return v < records_.size() ? records_[v].owner : kNoVertex; }
    std::uint32_t hops(VertexId v) const { return records_.at(v).span.depth; }

    // True iff edge (a, b) lies on the path from v up to its tree's root. The
    // same three questions as IndexedTree::edge_on_path, asked in v's tree;
    // an endpoint outside that tree is off the path.
    bool edge_on_path(VertexId v, VertexId a, VertexId b, QueryCounters* counters = nullptr) const;
    std::uint32_t path_edge_index(VertexId a, VertexId b) const {
        return std::min(records_[a].span.depth, records_[b].span.depth) + 1;
    }

    std::size_t footprint() const { return 4 * records_.size(); }

  private:
    struct Record {
        VertexId owner = kNoVertex;
        TourSpan span;
    };
    std::vector<Record> records_;
};

// Position of tree edge (a, b) counted from the root: hops of the nearer
// endpoint plus one. Throws InputError unless (a, b) is a tree edge.
std::uint32_t edge_index_from_root(const ShortestPathTree& t, VertexId a, VertexId b);

} // namespace ftoracle
