#pragma once

#include <span>
#include <vector>

#include "ftoracle/binary_io.hpp"
#include "ftoracle/graph.hpp"
#include "ftoracle/lca.hpp"
#include "ftoracle/path_descriptor.hpp"

namespace ftoracle {

// Exact single-fault distance oracle for the pairs S x T. Backed by a direct
// table: for every s and every tree edge on some s..t path, one Dijkstra in
// G - f, keyed by (s, t, index of f on st). Faults off st need no storage.
//
// Holds a pointer to the graph, which must outlive the oracle.
class StOracle {
  public:
    struct Answer {
        Distance length = kUnreachable;
        bool fault_on_path = false;
        // Set when fault_on_path; the stored path anchored at s.
        const ReplacementEntry* entry = nullptr;
    };

    StOracle() = default;
    // Throws InputError on empty or out-of-range vertex sets.
    StOracle(const Graph& g, std::span<const VertexId> sources, std::span<const VertexId> targets);

    // ||st <> f||, exactly; f == kNoEdge means no failure. Throws DomainError
    // when s is not a source or t not a target.
    Distance query(VertexId s, VertexId t, EdgeId f, QueryCounters* counters = nullptr) const {
        return lookup(s, t, f, counters).length;
    }
    Answer lookup(VertexId s, VertexId t, EdgeId f, QueryCounters* counters = nullptr) const;

    // Descriptor of the path behind query(s, t, f), oriented s -> t. Throws
    // UnreachableError when f disconnects s from t.
    PathDescriptor path(VertexId s, VertexId t, EdgeId f) const;

    bool is_source(VertexId v) const { return v < source_slot_.size() && source_slot_[v] != kNoVertex; }
    bool is_target(VertexId v) const { return v < target_slot_.size() && target_slot_[v] != kNoVertex; }
    std::span<const VertexId> sources() const { return sources_; }
    std::span<const VertexId> targets() const { return targets_; }
    // Throws DomainError for non-sources.
    const IndexedTree& source_tree(VertexId s) const;

    std::size_t entry_count() const { return entries_.size(); }
    const Graph& graph() const { return *g_; }

    void serialize(BinaryWriter& w) const;
    static StOracle deserialize(BinaryReader& r, const Graph& g);

  private:
    std::size_t pair_row(std::uint32_t s_slot, std::uint32_t t_slot) const {
        return static_cast<std::size_t>(s_slot) * targets_.size() + t_slot;
    }
    void index_vertex_sets();

    const Graph* g_ = nullptr;
    std::vector<VertexId> sources_;
    std::vector<VertexId> targets_;
    std::vector<std::uint32_t> source_slot_;
    std::vector<std::uint32_t> target_slot_;
    std::vector<IndexedTree> trees_;  // per source
    std::vector<std::uint64_t> row_offset_;  // per (s, t) pair, plus end
    std::vector<ReplacementEntry> entries_;
};

} // namespace ftoracle
