#include "ftoracle/st_oracle.hpp"

#include <algorithm>

#include "build_support.hpp"

namespace ftoracle {

void StOracle::index_vertex_sets() {
    source_slot_ = detail::slot_map(g_->num_vertices(), sources_);
    target_slot_ = detail::slot_map(g_->num_vertices(), targets_);
}

StOracle::StOracle(const Graph& g, std::span<const VertexId> sources, std::span<const VertexId> targets) : g_(&g) {
    if (sources.empty() || targets.empty()) {
        throw InputError("ST oracle needs nonempty source and target sets");
    }
    for (VertexId v : sources) {
        g.require_vertex(v);
    }
    for (VertexId v : targets) {
        g.require_vertex(v);
    }
    sources_ = detail::sorted_unique({sources.begin(), sources.end()});
    targets_ = detail::sorted_unique({targets.begin(), targets.end()});
    index_vertex_sets();

    DijkstraEngine engine(g);
    row_offset_.assign(sources_.size() * targets_.size() + 1, 0);
    trees_.reserve(sources_.size());
    for (std::uint32_t si = 0; si < sources_.size(); ++si) {
        engine.run(sources_[si]);
        trees_.emplace_back(engine.tree());
        const ShortestPathTree& t = trees_.back().tree();
        for (std::uint32_t ti = 0; ti < targets_.size(); ++ti) {
            std::size_t row = pair_row(si, ti);
            std::size_t len = t.contains(targets_[ti]) ? t.hops(targets_[ti]) : 0;
            row_offset_[row + 1] = row_offset_[row] + len;
        }
    }
    entries_.resize(row_offset_.back());
    for (std::uint32_t si = 0; si < sources_.size(); ++si) {
        detail::fill_replacement_rows(engine, trees_[si].tree(), targets_, [&](VertexId t) {
            return entries_.data() + row_offset_[pair_row(si, target_slot_[t])];
        });
    }
}

const IndexedTree& StOracle::source_tree(VertexId s) const {
    if (!is_source(s)) {
        throw DomainError("vertex " + std::to_string(s) + " is not a source");
    }
    return trees_[source_slot_[s]];
}

StOracle::Answer StOracle::lookup(VertexId s, VertexId t, EdgeId f, QueryCounters* counters) const {
    g_->require_vertex(s);
    g_->require_vertex(t);
    if (!is_source(s)) {
        throw DomainError("vertex " + std::to_string(s) + " is not a source");
    }
    if (!is_target(t)) {
        throw DomainError("vertex " + std::to_string(t) + " is not a target");
    }
    const std::uint32_t si = source_slot_[s];
    const IndexedTree& tree = trees_[si];
    Answer answer;
    answer.length = tree.dist(t);
    if (f == kNoEdge) {
        return answer;
    }
    g_->require_edge(f);
    const Edge& e = g_->edge(f);
    if (!tree.edge_on_path_if_present(t, e.u, e.v, counters)) {
        return answer;
    }
    const std::uint32_t index = tree.path_edge_index(e.u, e.v);
    if (counters) {
        ++counters->table_reads;
    }
    answer.fault_on_path = true;
    answer.entry = &entries_[row_offset_[pair_row(si, target_slot_[t])] + index - 1];
    answer.length = answer.entry->length;
    return answer;
}

PathDescriptor StOracle::path(VertexId s, VertexId t, EdgeId f) const {
    Answer a = lookup(s, t, f);
    if (!is_reachable(a.length)) {
        throw UnreachableError("no path from " + std::to_string(s) + " to " + std::to_string(t) + " avoiding edge " +
                               std::to_string(f));
    }
    if (a.fault_on_path) {
        return PathDescriptor::from_entry(s, t, *a.entry, f);
    }
    return PathDescriptor::canonical(s, t, a.length, f);
}

void StOracle::serialize(BinaryWriter& w) const {
    detail::write_vertices(w, sources_);
    detail::write_vertices(w, targets_);
    for (const IndexedTree& t : trees_) {
        detail::write_tree(w, t.tree());
    }
    detail::write_entries(w, entries_);
    detail::write_offsets(w, row_offset_);
}

StOracle StOracle::deserialize(BinaryReader& r, const Graph& g) {
    StOracle o;
    o.g_ = &g;
    o.sources_ = detail::read_vertices(r, g.num_vertices());
    o.targets_ = detail::read_vertices(r, g.num_vertices());
    if (o.sources_.empty() || o.targets_.empty() || detail::sorted_unique(o.sources_) != o.sources_ ||
        detail::sorted_unique(o.targets_) != o.targets_) {
        throw FormatError("malformed ST oracle vertex sets");
    }
    o.index_vertex_sets();
    for (VertexId s : o.sources_) {
        ShortestPathTree t = detail::read_tree(r, g);
        if (t.root() != s || t.truncated()) {
            throw FormatError("ST oracle tree does not match its source");
        }
        o.trees_.emplace_back(std::move(t));
    }
    o.entries_ = detail::read_entries(r, g.num_vertices());
    o.row_offset_ = detail::read_offsets(r, o.sources_.size() * o.targets_.size() + 1, o.entries_.size());
    for (std::uint32_t si = 0; si < o.sources_.size(); ++si) {
        const ShortestPathTree& t = o.trees_[si].tree();
        for (std::uint32_t ti = 0; ti < o.targets_.size(); ++ti) {
            std::size_t row = o.pair_row(si, ti);
            std::size_t expect = t.contains(o.targets_[ti]) ? t.hops(o.targets_[ti]) : 0;
            if (o.row_offset_[row + 1] - o.row_offset_[row] != expect) {
                throw FormatError("ST oracle row length disagrees with its tree");
            }
        }
    }
    return o;
}

} // namespace ftoracle
