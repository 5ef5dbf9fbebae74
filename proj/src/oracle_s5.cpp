#include "ftoracle/oracle_s5.hpp"

#include <algorithm>

#include <json.hpp>

#include "build_support.hpp"

namespace ftoracle {

std::string S5SizeReport::to_json() const {
    nlohmann::ordered_json j;
    j["oracle"] = "s5";
    j["n"] = n;
    j["sources"] = sources;
    j["landmarks"] = landmarks;
    j["targets"] = targets;
    j["hop_threshold"] = hop_threshold;
    j["landmark_cap"] = landmark_cap;
    j["dist_t_entries"] = dist_t_entries;
    j["dist_t_cap"] = dist_t_cap;
    j["max_nearest_hops"] = max_nearest_hops;
    j["tree_vertices"] = tree_vertices;
    j["ball_tree_vertices"] = ball_tree_vertices;
    j["st_entries"] = st_entries;
    j["lca_words"] = lca_words;
    j["total_entries"] = total_entries();
    return j.dump();
}

void OracleS5::index_targets() {
    const std::size_t n = g_->num_vertices();
    target_slot_ = detail::slot_map(n, targets_);
    landmark_tree_slot_.assign(n, kNoVertex);
}

void OracleS5::index_balls() {
    const std::size_t n = g_->num_vertices();
    std::vector<std::vector<VertexId>> members(targets_.size());
    for (VertexId v = 0; v < n; ++v) {
        if (nearest_[v] != kNoVertex) {
            members[target_slot_[nearest_[v]]].push_back(v);
        }
    }
    ball_trees_.clear();
    ball_trees_.reserve(targets_.size());
    for (std::size_t i = 0; i < targets_.size(); ++i) {
        ball_trees_.emplace_back(detail::restrict_tree(target_tree(targets_[i]).tree(), members[i]));
    }
    balls_ = BallForest(n, ball_trees_);
}

OracleS5 OracleS5::build(const Graph& g, std::span<const VertexId> sources, const S5Options& options) {
    if (sources.empty()) {
        throw InputError("stretch-5 oracle needs at least one source");
    }
    for (VertexId s : sources) {
        g.require_vertex(s);
    }
    const std::size_t n = g.num_vertices();
    OracleS5 o;
    o.g_ = &g;

    const std::uint32_t threshold = floor_root_power(n, 1, 2);
    const double p = options.landmark_probability.value_or(landmark_probability(n, 0.5));
    o.landmarks_ = sample_landmarks(g, p, threshold, options.seed, options.max_attempts);

    const auto source_set = detail::sorted_unique({sources.begin(), sources.end()});
    o.targets_ = detail::sorted_union(source_set, o.landmarks_.members);
    o.index_targets();
    o.st_ = StOracle(g, source_set, o.targets_);

    DijkstraEngine engine(g);
    for (VertexId t : o.targets_) {
        if (o.st_.is_source(t)) {
            continue;
        }
        engine.run(t);
        o.landmark_tree_slot_[t] = static_cast<std::uint32_t>(o.landmark_trees_.size());
        o.landmark_trees_.emplace_back(engine.tree());
    }

    // Nearest target per vertex; targets are visited in increasing id order
    // and only a strictly better (distance, id) replaces the incumbent.
    detail::Nearest nearest(n);
    for (VertexId t : o.targets_) {
        for (const TreeNode& node : o.target_tree(t).tree().nodes()) {
            nearest.offer(node.vertex, t, node.dist);
        }
    }
    o.nearest_ = std::move(nearest.vertex);
    o.nearest_dist_ = std::move(nearest.dist);
    o.index_balls();

    std::vector<std::vector<VertexId>> ball(o.targets_.size());
    o.row_offset_.assign(n + 1, 0);
    for (VertexId v = 0; v < n; ++v) {
        std::size_t len = 0;
        if (VertexId t = o.nearest_[v]; t != kNoVertex) {
            len = o.target_tree(t).tree().hops(v);
            if (len > threshold) {
                throw IntegrityError("vertex " + std::to_string(v) + " is " + std::to_string(len) +
                                     " hops from its nearest target, above the threshold " +
                                     std::to_string(threshold));
            }
            if (len > 0) {
                ball[o.target_slot_[t]].push_back(v);
            }
        }
        o.row_offset_[v + 1] = o.row_offset_[v] + len;
    }
    o.dist_t_.resize(o.row_offset_.back());
    for (std::size_t i = 0; i < o.targets_.size(); ++i) {
        if (ball[i].empty()) {
            continue;
        }
        detail::fill_replacement_rows(engine, o.target_tree(o.targets_[i]).tree(), ball[i],
                                      [&](VertexId v) { return o.dist_t_.data() + o.row_offset_[v]; });
    }
    return o;
}

const IndexedTree& OracleS5::target_tree(VertexId t) const {
    if (st_.is_source(t)) {
        return st_.source_tree(t);
    }
    if (t >= landmark_tree_slot_.size() || landmark_tree_slot_[t] == kNoVertex) {
        throw DomainError("vertex " + std::to_string(t) + " is not a target");
    }
    return landmark_trees_[landmark_tree_slot_[t]];
}

const ShortestPathTree* OracleS5::stored_tree(VertexId root) const {
    if (root < target_slot_.size() && target_slot_[root] != kNoVertex) {
        return &target_tree(root).tree();
    }
    return nullptr;
}

std::span<const ReplacementEntry> OracleS5::dist_t_row(VertexId v) const {
    g_->require_vertex(v);
    return {dist_t_.data() + row_offset_[v], dist_t_.data() + row_offset_[v + 1]};
}

Distance OracleS5::query(VertexId s, VertexId v, EdgeId f, S5Trace* trace) const {
    g_->require_vertex(s);
    g_->require_vertex(v);
    S5Trace local;
    S5Trace& tr = trace ? *trace : local;
    tr = S5Trace{};
    const IndexedTree& ts = st_.source_tree(s);
    const Distance base = ts.dist(v);
    if (f == kNoEdge) {
        return base;
    }
    g_->require_edge(f);
    const Edge& e = g_->edge(f);
    if (!ts.edge_on_path_if_present(v, e.u, e.v, &tr.counters)) {
        return base;
    }
    tr.fault_on_source_path = true;

    const VertexId x = nearest_[v];
    tr.nearest = x;
    Distance near = nearest_dist_[v];
    if (balls_.edge_on_path(v, e.u, e.v, &tr.counters)) {
        tr.fault_on_nearest_path = true;
        const std::uint32_t i = balls_.path_edge_index(e.u, e.v);
        ++tr.counters.table_reads;
        near = dist_t_[row_offset_[v] + i - 1].length;
    }
    const StOracle::Answer far = st_.lookup(s, x, f, &tr.counters);
    tr.fault_on_source_nearest = far.fault_on_path;
    tr.case_id = far.fault_on_path ? (tr.fault_on_nearest_path ? 1 : 2) : (tr.fault_on_nearest_path ? 3 : 4);
    if (!is_reachable(near) || !is_reachable(far.length)) {
        return kUnreachable;
    }
    return near + far.length;
}

Distance OracleS5::query(VertexId s, VertexId v, VertexId fault_a, VertexId fault_b, S5Trace* trace) const {
    g_->require_vertex(fault_a);
    g_->require_vertex(fault_b);
    return query(s, v, g_->find_edge(fault_a, fault_b).value_or(kNoEdge), trace);
}

std::vector<PathDescriptor> OracleS5::query_path(VertexId s, VertexId v, EdgeId f) const {
    S5Trace tr;
    const Distance estimate = query(s, v, f, &tr);
    if (!is_reachable(estimate)) {
        throw UnreachableError("no path from " + std::to_string(s) + " to " + std::to_string(v));
    }
    if (!tr.fault_on_source_path) {
        return {PathDescriptor::canonical(s, v, estimate, f)};
    }
    const VertexId x = tr.nearest;
    PathDescriptor near = PathDescriptor::canonical(x, v, nearest_dist_[v], f);
    if (tr.fault_on_nearest_path) {
        const Edge& e = g_->edge(f);
        const std::uint32_t i = balls_.path_edge_index(e.u, e.v);
        near = PathDescriptor::from_entry(x, v, dist_t_[row_offset_[v] + i - 1], f);
    }
    return {st_.path(s, x, f), near};
}

S5SizeReport OracleS5::measure() const {
    S5SizeReport r;
    const std::size_t n = g_->num_vertices();
    r.n = n;
    r.sources = st_.sources().size();
    r.landmarks = landmarks_.members.size();
    r.targets = targets_.size();
    r.hop_threshold = landmarks_.hop_threshold;
    r.landmark_cap = landmarks_.size_cap(n);
    r.dist_t_entries = dist_t_.size();
    r.dist_t_cap = n * floor_root_power(n, 1, 2);
    for (VertexId v = 0; v < n; ++v) {
        r.max_nearest_hops = std::max<std::uint32_t>(r.max_nearest_hops,
                                                     static_cast<std::uint32_t>(row_offset_[v + 1] - row_offset_[v]));
    }
    for (VertexId t : targets_) {
        const IndexedTree& tree = target_tree(t);
        r.tree_vertices += tree.tree().size();
        r.lca_words += tree.footprint();
    }
    for (const IndexedTree& tree : ball_trees_) {
        r.ball_tree_vertices += tree.tree().size();
        r.lca_words += tree.footprint();
    }
    r.lca_words += balls_.footprint();
    r.st_entries = st_.entry_count();
    return r;
}

void OracleS5::serialize(BinaryWriter& w) const {
    detail::write_section(w, "LMRK", [&](BinaryWriter& s) { detail::write_landmarks(s, landmarks_); });
    detail::write_section(w, "STOR", [&](BinaryWriter& s) { st_.serialize(s); });
    detail::write_section(w, "TREE", [&](BinaryWriter& s) {
        detail::write_vertices(s, targets_);
        for (const IndexedTree& t : landmark_trees_) {
            detail::write_tree(s, t.tree());
        }
    });
    detail::write_section(w, "NEAR", [&](BinaryWriter& s) {
        detail::write_vertex_array(s, nearest_);
        detail::write_distances(s, nearest_dist_);
    });
    detail::write_section(w, "DIST", [&](BinaryWriter& s) {
        detail::write_entries(s, dist_t_);
        detail::write_offsets(s, row_offset_);
    });
}

OracleS5 OracleS5::deserialize(BinaryReader& r, const Graph& g) {
    const std::size_t n = g.num_vertices();
    OracleS5 o;
    o.g_ = &g;
    {
        auto s = detail::read_section(r, "LMRK");
        o.landmarks_ = detail::read_landmarks(s, n);
        s.expect_end();
    }
    {
        auto s = detail::read_section(r, "STOR");
        o.st_ = StOracle::deserialize(s, g);
        s.expect_end();
    }
    {
        auto s = detail::read_section(r, "TREE");
        o.targets_ = detail::read_vertices(s, n);
        if (o.targets_ != detail::sorted_union(o.st_.sources(), o.landmarks_.members)) {
            throw FormatError("target set is not sources plus landmarks");
        }
        o.index_targets();
        for (VertexId t : o.targets_) {
            if (o.st_.is_source(t)) {
                continue;
            }
            ShortestPathTree tree = detail::read_tree(s, g);
            if (tree.root() != t || tree.truncated()) {
                throw FormatError("landmark tree does not match its root");
            }
            o.landmark_tree_slot_[t] = static_cast<std::uint32_t>(o.landmark_trees_.size());
            o.landmark_trees_.emplace_back(std::move(tree));
        }
        s.expect_end();
    }
    {
        auto s = detail::read_section(r, "NEAR");
        o.nearest_ = detail::read_vertex_array(s, n, n);
        o.nearest_dist_ = detail::read_distances(s, n);
        s.expect_end();
        for (VertexId v = 0; v < n; ++v) {
            if (o.nearest_[v] != kNoVertex && o.target_slot_[o.nearest_[v]] == kNoVertex) {
                throw FormatError("nearest vertex is not a target");
            }
        }
        try {
            o.index_balls();
        } catch (const IntegrityError& e) {
            throw FormatError(std::string("nearest targets do not form balls: ") + e.what());
        }
    }
    {
        auto s = detail::read_section(r, "DIST");
        o.dist_t_ = detail::read_entries(s, n);
        o.row_offset_ = detail::read_offsets(s, n + 1, o.dist_t_.size());
        s.expect_end();
        for (VertexId v = 0; v < n; ++v) {
            std::size_t expect = 0;
            if (o.nearest_[v] != kNoVertex) {
                const ShortestPathTree& t = o.target_tree(o.nearest_[v]).tree();
                expect = t.contains(v) ? t.hops(v) : 0;
            }
            if (o.row_offset_[v + 1] - o.row_offset_[v] != expect) {
                throw FormatError("DistT row length disagrees with the nearest target's tree");
            }
        }
    }
    return o;
}

} // namespace ftoracle
