#include "ftoracle/oracle_s13.hpp"

#include <algorithm>

#include <json.hpp>

#include "build_support.hpp"

namespace ftoracle {

int s13_case(bool in_vx, bool in_xy, bool in_ys) {
    static constexpr int table[2][2][2] = {{{1, 2}, {3, 5}}, {{4, 6}, {7, 8}}};
    return table[in_vx][in_xy][in_ys];
}

std::string S13SizeReport::to_json() const {
    nlohmann::ordered_json j;
    j["oracle"] = "s13";
    j["n"] = n;
    j["sources"] = sources;
    j["landmarks1"] = landmarks1;
    j["landmarks2"] = landmarks2;
    j["targets1"] = targets1;
    j["targets2"] = targets2;
    j["hop_threshold1"] = hop_threshold1;
    j["hop_threshold2"] = hop_threshold2;
    j["landmark_cap1"] = landmark_cap1;
    j["landmark_cap2"] = landmark_cap2;
    j["dist1_entries"] = dist1_entries;
    j["dist1_cap"] = dist1_cap;
    j["dist2_entries"] = dist2_entries;
    j["dist2_cap"] = dist2_cap;
    j["truncated_tree_vertices"] = truncated_tree_vertices;
    j["truncated_tree_cap"] = truncated_tree_cap;
    j["max_hops1"] = max_hops1;
    j["max_hops2"] = max_hops2;
    j["full_tree_vertices"] = full_tree_vertices;
    j["path_tree_vertices"] = path_tree_vertices;
    j["st_entries"] = st_entries;
    j["lca_words"] = lca_words;
    j["total_entries"] = total_entries();
    return j.dump();
}

namespace {

std::string hop_violation(VertexId v, std::size_t hops, std::uint32_t threshold) {
    return "vertex " + std::to_string(v) + " is " + std::to_string(hops) +
           " hops from its nearest target, above the threshold " + std::to_string(threshold);
}

} // namespace

void OracleS13::index_targets() {
    const std::size_t n = g_->num_vertices();
    targets1_ = detail::sorted_union(st_.sources(), landmarks1_.members);
    targets2_ = detail::sorted_union(st_.sources(), landmarks2_.members);
    target1_slot_ = detail::slot_map(n, targets1_);
    target2_slot_ = detail::slot_map(n, targets2_);
    landmark_tree_slot_.assign(n, kNoVertex);
}

std::uint32_t OracleS13::slot1(VertexId u) const {
    if (u >= target1_slot_.size() || target1_slot_[u] == kNoVertex) {
        throw DomainError("vertex " + std::to_string(u) + " is not a first-level target");
    }
    return target1_slot_[u];
}

OracleS13 OracleS13::build(const Graph& g, std::span<const VertexId> sources, const S13Options& options) {
    if (sources.empty()) {
        throw InputError("stretch-13 oracle needs at least one source");
    }
    for (VertexId s : sources) {
        g.require_vertex(s);
    }
    const std::size_t n = g.num_vertices();
    OracleS13 o;
    o.g_ = &g;
    std::tie(o.landmarks1_, o.landmarks2_) = two_level_sample(g, options.seed, options.max_attempts, options.landmarks);
    if (!std::includes(o.landmarks1_.members.begin(), o.landmarks1_.members.end(), o.landmarks2_.members.begin(),
                       o.landmarks2_.members.end())) {
        throw IntegrityError("second landmark level is not a subset of the first");
    }
    const auto source_set = detail::sorted_unique({sources.begin(), sources.end()});
    o.st_ = StOracle(g, source_set, detail::sorted_union(source_set, o.landmarks2_.members));
    o.index_targets();

    DijkstraEngine engine(g);
    for (VertexId t : o.targets2_) {
        if (o.st_.is_source(t)) {
            continue;
        }
        engine.run(t);
        o.landmark_tree_slot_[t] = static_cast<std::uint32_t>(o.landmark_trees_.size());
        o.landmark_trees_.emplace_back(engine.tree());
    }

    // t_v over T1. Weights are positive, so when T1 = V every vertex is its
    // own nearest target and no search is needed.
    detail::Nearest near1(n);
    for (VertexId u : o.targets1_) {
        near1.offer(u, u, 0.0);
    }
    if (o.targets1_.size() < n) {
        for (VertexId u : o.targets1_) {
            if (const ShortestPathTree* full = o.stored_tree(u)) {
                for (const TreeNode& node : full->nodes()) {
                    near1.offer(node.vertex, u, node.dist);
                }
                continue;
            }
            engine.run(u);
            for (VertexId v : engine.order()) {
                near1.offer(v, u, engine.dist(v));
            }
        }
    }
    o.nearest1_ = std::move(near1.vertex);
    o.nearest1_dist_ = std::move(near1.dist);

    // t'_u over T2, kept for u in T1.
    detail::Nearest near2(n);
    for (VertexId y : o.targets2_) {
        for (const TreeNode& node : o.full_tree(y).tree().nodes()) {
            if (o.target1_slot_[node.vertex] != kNoVertex) {
                near2.offer(node.vertex, y, node.dist);
            }
        }
    }
    o.nearest2_.resize(o.targets1_.size());
    o.nearest2_dist_.resize(o.targets1_.size());
    for (std::size_t k = 0; k < o.targets1_.size(); ++k) {
        o.nearest2_[k] = near2.vertex[o.targets1_[k]];
        o.nearest2_dist_[k] = near2.dist[o.targets1_[k]];
    }

    // Balls, ball trees and Dist1.
    std::vector<std::vector<VertexId>> balls(o.targets1_.size());
    for (VertexId v = 0; v < n; ++v) {
        if (o.nearest1_[v] != kNoVertex) {
            balls[o.target1_slot_[o.nearest1_[v]]].push_back(v);
        }
    }
    o.row1_offset_.assign(n + 1, 0);
    std::vector<ShortestPathTree> ball_bases(o.targets1_.size());
    o.ball_trees_.reserve(o.targets1_.size());
    for (std::size_t k = 0; k < o.targets1_.size(); ++k) {
        const VertexId x = o.targets1_[k];
        if (balls[k].size() == 1) {
            o.ball_trees_.emplace_back(ShortestPathTree(n, {TreeNode{x, kNoVertex, kNoEdge, 0.0, 0}}, true));
            continue;
        }
        engine.run(x);
        ball_bases[k] = engine.tree();
        o.ball_trees_.emplace_back(detail::restrict_tree(ball_bases[k], balls[k]));
        for (VertexId v : balls[k]) {
            o.row1_offset_[v + 1] = ball_bases[k].hops(v);
        }
    }
    for (VertexId v = 0; v < n; ++v) {
        const std::uint64_t len = o.row1_offset_[v + 1];
        if (len > o.landmarks1_.hop_threshold) {
            throw IntegrityError(hop_violation(v, len, o.landmarks1_.hop_threshold));
        }
        o.row1_offset_[v + 1] = o.row1_offset_[v] + len;
    }
    o.dist1_.resize(o.row1_offset_.back());
    for (std::size_t k = 0; k < o.targets1_.size(); ++k) {
        if (balls[k].size() > 1) {
            detail::fill_replacement_rows(engine, ball_bases[k], balls[k],
                                          [&](VertexId v) { return o.dist1_.data() + o.row1_offset_[v]; });
            ball_bases[k] = ShortestPathTree();
        }
    }

    // Dist2 rows for every u in T1, anchored at t'_u.
    std::vector<std::vector<VertexId>> balls2(o.targets2_.size());
    o.row2_offset_.assign(o.targets1_.size() + 1, 0);
    for (std::size_t k = 0; k < o.targets1_.size(); ++k) {
        std::size_t len = 0;
        if (const VertexId y = o.nearest2_[k]; y != kNoVertex) {
            len = o.full_tree(y).tree().hops(o.targets1_[k]);
            if (len > o.landmarks2_.hop_threshold) {
                throw IntegrityError(hop_violation(o.targets1_[k], len, o.landmarks2_.hop_threshold));
            }
            if (len > 0) {
                balls2[o.target2_slot_[y]].push_back(o.targets1_[k]);
            }
        }
        o.row2_offset_[k + 1] = o.row2_offset_[k] + len;
    }
    o.dist2_.resize(o.row2_offset_.back());
    for (std::size_t j = 0; j < o.targets2_.size(); ++j) {
        if (balls2[j].empty()) {
            continue;
        }
        detail::fill_replacement_rows(engine, o.full_tree(o.targets2_[j]).tree(), balls2[j], [&](VertexId u) {
            return o.dist2_.data() + o.row2_offset_[o.target1_slot_[u]];
        });
    }
    o.index_forests();
    return o;
}

void OracleS13::index_forests() {
    const std::size_t n = g_->num_vertices();
    forest1_ = BallForest(n, ball_trees_);
    std::vector<std::vector<VertexId>> ends(targets2_.size());
    for (std::size_t k = 0; k < targets1_.size(); ++k) {
        if (nearest2_[k] != kNoVertex) {
            ends[target2_slot_[nearest2_[k]]].push_back(targets1_[k]);
        }
    }
    path_trees2_.clear();
    path_trees2_.reserve(targets2_.size());
    for (std::size_t j = 0; j < targets2_.size(); ++j) {
        path_trees2_.emplace_back(detail::path_union_tree(full_tree(targets2_[j]).tree(), ends[j]));
    }
    forest2_ = BallForest(n, path_trees2_);
}

VertexId OracleS13::nearest2(VertexId u) const { return nearest2_[slot1(u)]; }

Distance OracleS13::nearest2_dist(VertexId u) const { return nearest2_dist_[slot1(u)]; }

std::span<const ReplacementEntry> OracleS13::dist1_row(VertexId v) const {
    g_->require_vertex(v);
    return {dist1_.data() + row1_offset_[v], dist1_.data() + row1_offset_[v + 1]};
}

std::span<const ReplacementEntry> OracleS13::dist2_row(VertexId u) const {
    const std::uint32_t k = slot1(u);
    return {dist2_.data() + row2_offset_[k], dist2_.data() + row2_offset_[k + 1]};
}

const IndexedTree& OracleS13::ball_tree(VertexId u) const { return ball_trees_[slot1(u)]; }

const IndexedTree& OracleS13::full_tree(VertexId u) const {
    if (st_.is_source(u)) {
        return st_.source_tree(u);
    }
    if (u >= landmark_tree_slot_.size() || landmark_tree_slot_[u] == kNoVertex) {
        throw DomainError("vertex " + std::to_string(u) + " is not a second-level target");
    }
    return landmark_trees_[landmark_tree_slot_[u]];
}

const ShortestPathTree* OracleS13::stored_tree(VertexId root) const {
    if (root < target2_slot_.size() && target2_slot_[root] != kNoVertex) {
        return &full_tree(root).tree();
    }
    return nullptr;
}

Distance OracleS13::query(VertexId s, VertexId v, EdgeId f, S13Trace* trace) const {
    g_->require_vertex(s);
    g_->require_vertex(v);
    S13Trace local;
    S13Trace& tr = trace ? *trace : local;
    tr = S13Trace{};
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

    const VertexId x = nearest1_[v];
    const std::uint32_t k = target1_slot_[x];
    const VertexId y = nearest2_[k];
    tr.x = x;
    tr.y = y;
    tr.base_vx = nearest1_dist_[v];
    tr.base_xy = nearest2_dist_[k];
    tr.base_ys = ts.dist(y);

    Distance vx = tr.base_vx;
    if (forest1_.edge_on_path(v, e.u, e.v, &tr.counters)) {
        tr.in_vx = true;
        const std::uint32_t i = forest1_.path_edge_index(e.u, e.v);
        ++tr.counters.table_reads;
        vx = dist1_[row1_offset_[v] + i - 1].length;
    }
    Distance xy = tr.base_xy;
    if (forest2_.edge_on_path(x, e.u, e.v, &tr.counters)) {
        tr.in_xy = true;
        const std::uint32_t j = forest2_.path_edge_index(e.u, e.v);
        ++tr.counters.table_reads;
        xy = dist2_[row2_offset_[k] + j - 1].length;
    }
    const StOracle::Answer ys = st_.lookup(s, y, f, &tr.counters);
    tr.in_ys = ys.fault_on_path;
    tr.case_id = s13_case(tr.in_vx, tr.in_xy, tr.in_ys);
    if (!is_reachable(vx) || !is_reachable(xy) || !is_reachable(ys.length)) {
        return kUnreachable;
    }
    return vx + xy + ys.length;
}

Distance OracleS13::query(VertexId s, VertexId v, VertexId fault_a, VertexId fault_b, S13Trace* trace) const {
    g_->require_vertex(fault_a);
    g_->require_vertex(fault_b);
    return query(s, v, g_->find_edge(fault_a, fault_b).value_or(kNoEdge), trace);
}

int OracleS13::classify_case(VertexId s, VertexId v, EdgeId f) const {
    S13Trace tr;
    query(s, v, f, &tr);
    return tr.case_id;
}

std::vector<PathDescriptor> OracleS13::query_path(VertexId s, VertexId v, EdgeId f) const {
    S13Trace tr;
    const Distance estimate = query(s, v, f, &tr);
    if (!is_reachable(estimate)) {
        throw UnreachableError("no path from " + std::to_string(s) + " to " + std::to_string(v));
    }
    if (!tr.fault_on_source_path) {
        return {PathDescriptor::canonical(s, v, estimate, f)};
    }
    const Edge& e = g_->edge(f);
    const std::uint32_t k = target1_slot_[tr.x];
    PathDescriptor yx = PathDescriptor::canonical(tr.y, tr.x, tr.base_xy, f);
    if (tr.in_xy) {
        const std::uint32_t j = forest2_.path_edge_index(e.u, e.v);
        yx = PathDescriptor::from_entry(tr.y, tr.x, dist2_[row2_offset_[k] + j - 1], f);
    }
    PathDescriptor xv = PathDescriptor::canonical(tr.x, v, tr.base_vx, f);
    if (tr.in_vx) {
        const std::uint32_t i = forest1_.path_edge_index(e.u, e.v);
        xv = PathDescriptor::from_entry(tr.x, v, dist1_[row1_offset_[v] + i - 1], f);
    }
    return {st_.path(s, tr.y, f), yx, xv};
}

S13SizeReport OracleS13::measure() const {
    S13SizeReport r;
    const std::size_t n = g_->num_vertices();
    r.n = n;
    r.sources = st_.sources().size();
    r.landmarks1 = landmarks1_.members.size();
    r.landmarks2 = landmarks2_.members.size();
    r.targets1 = targets1_.size();
    r.targets2 = targets2_.size();
    r.hop_threshold1 = landmarks1_.hop_threshold;
    r.hop_threshold2 = landmarks2_.hop_threshold;
    r.landmark_cap1 = landmarks1_.size_cap(n);
    r.landmark_cap2 = landmarks2_.size_cap(n);
    r.dist1_entries = dist1_.size();
    r.dist1_cap = n * floor_root_power(n, 1, 3);
    r.dist2_entries = dist2_.size();
    r.dist2_cap = targets1_.size() * floor_root_power(n, 2, 3);
    r.truncated_tree_cap = r.dist1_cap;
    for (VertexId v = 0; v < n; ++v) {
        r.max_hops1 = std::max<std::uint32_t>(r.max_hops1, row1_offset_[v + 1] - row1_offset_[v]);
    }
    for (std::size_t k = 0; k < targets1_.size(); ++k) {
        r.max_hops2 = std::max<std::uint32_t>(r.max_hops2, row2_offset_[k + 1] - row2_offset_[k]);
    }
    for (const IndexedTree& t : ball_trees_) {
        r.truncated_tree_vertices += t.tree().size();
        r.lca_words += t.footprint();
    }
    for (VertexId u : targets2_) {
        r.full_tree_vertices += full_tree(u).tree().size();
        r.lca_words += full_tree(u).footprint();
    }
    for (const IndexedTree& t : path_trees2_) {
        r.path_tree_vertices += t.tree().size();
        r.lca_words += t.footprint();
    }
    r.lca_words += forest1_.footprint() + forest2_.footprint();
    r.st_entries = st_.entry_count();
    return r;
}

void OracleS13::serialize(BinaryWriter& w) const {
    detail::write_section(w, "LMK1", [&](BinaryWriter& s) { detail::write_landmarks(s, landmarks1_); });
    detail::write_section(w, "LMK2", [&](BinaryWriter& s) { detail::write_landmarks(s, landmarks2_); });
    detail::write_section(w, "STOR", [&](BinaryWriter& s) { st_.serialize(s); });
    detail::write_section(w, "TREE", [&](BinaryWriter& s) {
        for (const IndexedTree& t : landmark_trees_) {
            detail::write_tree(s, t.tree());
        }
    });
    detail::write_section(w, "BALL", [&](BinaryWriter& s) {
        for (const IndexedTree& t : ball_trees_) {
            detail::write_tree(s, t.tree());
        }
    });
    detail::write_section(w, "NEAR", [&](BinaryWriter& s) {
        detail::write_vertex_array(s, nearest1_);
        detail::write_distances(s, nearest1_dist_);
        detail::write_vertex_array(s, nearest2_);
        detail::write_distances(s, nearest2_dist_);
    });
    detail::write_section(w, "DST1", [&](BinaryWriter& s) {
        detail::write_entries(s, dist1_);
        detail::write_offsets(s, row1_offset_);
    });
    detail::write_section(w, "DST2", [&](BinaryWriter& s) {
        detail::write_entries(s, dist2_);
        detail::write_offsets(s, row2_offset_);
    });
}

OracleS13 OracleS13::deserialize(BinaryReader& r, const Graph& g) {
    const std::size_t n = g.num_vertices();
    OracleS13 o;
    o.g_ = &g;
    {
        auto s = detail::read_section(r, "LMK1");
        o.landmarks1_ = detail::read_landmarks(s, n);
        s.expect_end();
    }
    {
        auto s = detail::read_section(r, "LMK2");
        o.landmarks2_ = detail::read_landmarks(s, n);
        s.expect_end();
    }
    {
        auto s = detail::read_section(r, "STOR");
        o.st_ = StOracle::deserialize(s, g);
        s.expect_end();
    }
    o.index_targets();
    if (o.st_.targets().size() != o.targets2_.size() ||
        !std::equal(o.targets2_.begin(), o.targets2_.end(), o.st_.targets().begin())) {
        throw FormatError("ST oracle targets are not sources plus second-level landmarks");
    }
    {
        auto s = detail::read_section(r, "TREE");
        for (VertexId t : o.targets2_) {
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
        auto s = detail::read_section(r, "BALL");
        for (VertexId t : o.targets1_) {
            ShortestPathTree tree = detail::read_tree(s, g);
            if (tree.root() != t) {
                throw FormatError("ball tree does not match its root");
            }
            o.ball_trees_.emplace_back(std::move(tree));
        }
        s.expect_end();
    }
    {
        auto s = detail::read_section(r, "NEAR");
        o.nearest1_ = detail::read_vertex_array(s, n, n);
        o.nearest1_dist_ = detail::read_distances(s, n);
        o.nearest2_ = detail::read_vertex_array(s, n, o.targets1_.size());
        o.nearest2_dist_ = detail::read_distances(s, o.targets1_.size());
        s.expect_end();
        for (VertexId v = 0; v < n; ++v) {
            const VertexId x = o.nearest1_[v];
            if (x != kNoVertex && (o.target1_slot_[x] == kNoVertex || !o.ball_tree(x).contains(v))) {
                throw FormatError("nearest first-level target disagrees with the ball trees");
            }
        }
        for (VertexId y : o.nearest2_) {
            if (y != kNoVertex && o.target2_slot_[y] == kNoVertex) {
                throw FormatError("nearest second-level vertex is not a target");
            }
        }
    }
    {
        auto s = detail::read_section(r, "DST1");
        o.dist1_ = detail::read_entries(s, n);
        o.row1_offset_ = detail::read_offsets(s, n + 1, o.dist1_.size());
        s.expect_end();
        for (VertexId v = 0; v < n; ++v) {
            const VertexId x = o.nearest1_[v];
            const std::size_t expect = x == kNoVertex ? 0 : o.ball_tree(x).tree().hops(v);
            if (o.row1_offset_[v + 1] - o.row1_offset_[v] != expect) {
                throw FormatError("Dist1 row length disagrees with the ball tree");
            }
        }
    }
    {
        auto s = detail::read_section(r, "DST2");
        o.dist2_ = detail::read_entries(s, n);
        o.row2_offset_ = detail::read_offsets(s, o.targets1_.size() + 1, o.dist2_.size());
        s.expect_end();
        for (std::size_t k = 0; k < o.targets1_.size(); ++k) {
            const VertexId y = o.nearest2_[k];
            std::size_t expect = 0;
            if (y != kNoVertex) {
                const ShortestPathTree& t = o.full_tree(y).tree();
                expect = t.contains(o.targets1_[k]) ? t.hops(o.targets1_[k]) : 0;
            }
            if (o.row2_offset_[k + 1] - o.row2_offset_[k] != expect) {
                throw FormatError("Dist2 row length disagrees with the second-level tree");
            }
        }
    }
    try {
        o.index_forests();
    } catch (const std::runtime_error& e) {
        throw FormatError(std::string("ball trees overlap: ") + e.what());
    }
    return o;
}

} // namespace ftoracle
