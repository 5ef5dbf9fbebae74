#include "ftoracle/replacement.hpp"

#include <algorithm>

namespace ftoracle {

Distance exact_replacement_distance(const Graph& g, VertexId s, VertexId v, EdgeId f) {
    g.require_vertex(s);
    g.require_vertex(v);
    g.require_edge(f);
    DijkstraEngine engine(g);
    engine.run(s, f);
    return engine.dist(v);
}

ExactReplacementTable::ExactReplacementTable(const Graph& g, std::span<const VertexId> sources)
    : g_(&g), sources_(sources.begin(), sources.end()), slot_of_(g.num_vertices(), kNoVertex) {
    if (sources_.empty()) {
        throw InputError("exact replacement table needs at least one source");
    }
    std::sort(sources_.begin(), sources_.end());
    sources_.erase(std::unique(sources_.begin(), sources_.end()), sources_.end());
    DijkstraEngine engine(g);
    for (std::uint32_t i = 0; i < sources_.size(); ++i) {
        VertexId s = sources_[i];
        g.require_vertex(s);
        slot_of_[s] = i;
        engine.run(s);
        trees_.push_back(engine.tree());
        std::vector<std::uint32_t> row_of(g.num_edges(), kNoVertex);
        std::vector<std::vector<Distance>> rows;
        for (const TreeNode& node : trees_.back().nodes()) {
            if (node.parent_edge == kNoEdge) {
                continue;
            }
            engine.run(s, node.parent_edge);
            std::vector<Distance> row(g.num_vertices());
            for (VertexId v = 0; v < g.num_vertices(); ++v) {
                row[v] = engine.dist(v);
            }
            row_of[node.parent_edge] = static_cast<std::uint32_t>(rows.size());
            rows.push_back(std::move(row));
        }
        row_of_edge_.push_back(std::move(row_of));
        rows_.push_back(std::move(rows));
    }
}

std::size_t ExactReplacementTable::source_slot(VertexId s) const {
    if (s >= slot_of_.size() || slot_of_[s] == kNoVertex) {
        throw DomainError("vertex " + std::to_string(s) + " is not a source of the exact table");
    }
    return slot_of_[s];
}

const ShortestPathTree& ExactReplacementTable::tree(VertexId s) const { return trees_[source_slot(s)]; }

Distance ExactReplacementTable::base(VertexId s, VertexId v) const {
    g_->require_vertex(v);
    return trees_[source_slot(s)].dist(v);
}

Distance ExactReplacementTable::lookup(VertexId s, VertexId v, EdgeId f) const {
    std::size_t slot = source_slot(s);
    g_->require_vertex(v);
    if (f == kNoEdge) {
        return trees_[slot].dist(v);
    }
    g_->require_edge(f);
    std::uint32_t row = row_of_edge_[slot][f];
    if (row == kNoVertex) {
        return trees_[slot].dist(v);
    }
    return rows_[slot][row][v];
}

} // namespace ftoracle
