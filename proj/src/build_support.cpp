#include "build_support.hpp"

#include <algorithm>

namespace ftoracle::detail {

void fill_replacement_rows(DijkstraEngine& engine, const ShortestPathTree& base, std::span<const VertexId> targets,
                           const RowLocator& row_of) {
    // Group targets under every tree vertex on their root path; the tree edge
    // entering vertex c is the hops(c)-th edge from the root.
    std::vector<std::vector<VertexId>> below(base.size());
    for (VertexId t : targets) {
        if (!base.contains(t) || t == base.root()) {
            continue;
        }
        for (VertexId c = t; c != base.root(); c = base.parent(c)) {
            below[base.local_index(c)].push_back(t);
        }
    }
    const auto nodes = base.nodes();
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (below[i].empty()) {
            continue;
        }
        engine.run(base.root(), nodes[i].parent_edge);
        for (VertexId t : below[i]) {
            row_of(t)[nodes[i].hops - 1] = describe_replacement(engine, base, t);
        }
    }
}

std::vector<VertexId> sorted_unique(std::vector<VertexId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<VertexId> sorted_union(std::span<const VertexId> a, std::span<const VertexId> b) {
    std::vector<VertexId> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return sorted_unique(std::move(out));
}

std::vector<std::uint32_t> slot_map(std::size_t n, std::span<const VertexId> members) {
    std::vector<std::uint32_t> slot(n, kNoVertex);
    for (std::uint32_t i = 0; i < members.size(); ++i) {
        slot[members[i]] = i;
    }
    return slot;
}

ShortestPathTree restrict_tree(const ShortestPathTree& full, std::span<const VertexId> members) {
    std::vector<char> in(full.graph_size(), 0);
    std::size_t distinct = 0;
    for (VertexId v : members) {
        distinct += in.at(v) ? 0 : 1;
        in[v] = 1;
    }
    std::vector<TreeNode> nodes;
    nodes.reserve(distinct);
    for (const TreeNode& node : full.nodes()) {
        if (in[node.vertex]) {
            if (node.parent != kNoVertex && !in[node.parent]) {
                throw IntegrityError("vertex " + std::to_string(node.vertex) + " is in the ball of " +
                                     std::to_string(full.root()) + " but its tree parent is not");
            }
            nodes.push_back(node);
        }
    }
    if (nodes.size() != distinct || nodes.empty() || nodes.front().vertex != full.root()) {
        throw IntegrityError("ball of vertex " + std::to_string(full.root()) + " does not match its tree");
    }
    return ShortestPathTree(full.graph_size(), std::move(nodes), true);
}

ShortestPathTree path_union_tree(const ShortestPathTree& full, std::span<const VertexId> ends) {
    std::vector<char> seen(full.graph_size(), 0);
    std::vector<VertexId> members{full.root()};
    seen[full.root()] = 1;
    for (VertexId v : ends) {
        for (VertexId c = v; !seen.at(c); c = full.parent(c)) {
            seen[c] = 1;
            members.push_back(c);
        }
    }
    return restrict_tree(full, members);
}

void write_vertices(BinaryWriter& w, std::span<const VertexId> v) {
    w.u64(v.size());
    for (VertexId x : v) {
        w.u32(x);
    }
}

std::vector<VertexId> read_vertices(BinaryReader& r, std::size_t n) {
    std::vector<VertexId> v(r.count(4));
    for (auto& x : v) {
        x = r.u32();
        if (x >= n) {
            throw FormatError("vertex id out of range in container");
        }
    }
    return v;
}

void write_landmarks(BinaryWriter& w, const LandmarkSet& l) {
    w.f64(l.probability);
    w.u32(l.hop_threshold);
    w.u64(l.seed);
    w.u32(l.attempts);
    write_vertices(w, l.members);
}

LandmarkSet read_landmarks(BinaryReader& r, std::size_t n) {
    LandmarkSet l;
    l.probability = r.f64();
    l.hop_threshold = r.u32();
    l.seed = r.u64();
    l.attempts = r.u32();
    l.members = read_vertices(r, n);
    if (!std::is_sorted(l.members.begin(), l.members.end())) {
        throw FormatError("landmark set not sorted");
    }
    return l;
}

void write_tree(BinaryWriter& w, const ShortestPathTree& t) {
    w.u8(t.truncated() ? 1 : 0);
    w.u64(t.size());
    for (const TreeNode& node : t.nodes()) {
        w.u32(node.vertex);
        w.u32(node.parent);
        w.u32(node.parent_edge);
        w.f64(node.dist);
        w.u32(node.hops);
    }
}

ShortestPathTree read_tree(BinaryReader& r, const Graph& g) {
    bool truncated = r.u8() != 0;
    std::vector<TreeNode> nodes(r.count(24));
    if (nodes.empty()) {
        throw FormatError("empty tree in container");
    }
    for (TreeNode& node : nodes) {
        node.vertex = r.u32();
        node.parent = r.u32();
        node.parent_edge = r.u32();
        node.dist = r.f64();
        node.hops = r.u32();
        if (node.vertex >= g.num_vertices() || (node.parent != kNoVertex && node.parent >= g.num_vertices()) ||
            (node.parent_edge != kNoEdge && node.parent_edge >= g.num_edges())) {
            throw FormatError("tree node out of range in container");
        }
    }
    return ShortestPathTree(g.num_vertices(), std::move(nodes), truncated);
}

void write_entries(BinaryWriter& w, std::span<const ReplacementEntry> e) {
    w.u64(e.size());
    for (const ReplacementEntry& x : e) {
        w.f64(x.length);
        w.u32(x.bridge_tail);
        w.u32(x.bridge_head);
    }
}

std::vector<ReplacementEntry> read_entries(BinaryReader& r, std::size_t n) {
    std::vector<ReplacementEntry> e(r.count(16));
    for (ReplacementEntry& x : e) {
        x.length = r.f64();
        x.bridge_tail = r.u32();
        x.bridge_head = r.u32();
        if ((x.bridge_tail != kNoVertex && x.bridge_tail >= n) || (x.bridge_head != kNoVertex && x.bridge_head >= n)) {
            throw FormatError("replacement entry out of range in container");
        }
    }
    return e;
}

void write_offsets(BinaryWriter& w, std::span<const std::uint64_t> o) {
    w.u64(o.size());
    for (std::uint64_t x : o) {
        w.u64(x);
    }
}

std::vector<std::uint64_t> read_offsets(BinaryReader& r, std::size_t expected_count, std::size_t total) {
    std::vector<std::uint64_t> o(r.count(8));
    for (auto& x : o) {
        x = r.u64();
    }
    if (o.size() != expected_count || o.empty() || o.front() != 0 || o.back() != total ||
        !std::is_sorted(o.begin(), o.end())) {
        throw FormatError("malformed row offsets in container");
    }
    return o;
}

} // namespace ftoracle::detail

namespace ftoracle::detail {

BinaryReader read_section(BinaryReader& r, const char (&tag)[5]) {
    std::string got = r.tag();
    if (got != std::string(tag, 4)) {
        throw FormatError("expected section '" + std::string(tag, 4) + "', found '" + got + "'");
    }
    std::uint64_t len = r.u64();
    if (len > r.remaining()) {
        throw FormatError("section '" + got + "' is truncated");
    }
    return BinaryReader(r.raw(static_cast<std::size_t>(len)));
}

void write_vertex_array(BinaryWriter& w, std::span<const VertexId> v) {
    w.u64(v.size());
    for (VertexId x : v) {
        w.u32(x);
    }
}

std::vector<VertexId> read_vertex_array(BinaryReader& r, std::size_t n, std::size_t expected) {
    std::vector<VertexId> v(r.count(4));
    if (v.size() != expected) {
        throw FormatError("vertex array has the wrong length");
    }
    for (auto& x : v) {
        x = r.u32();
        if (x != kNoVertex && x >= n) {
            throw FormatError("vertex id out of range in container");
        }
    }
    return v;
}

void write_distances(BinaryWriter& w, std::span<const Distance> d) {
    w.u64(d.size());
    for (Distance x : d) {
        w.f64(x);
    }
}

std::vector<Distance> read_distances(BinaryReader& r, std::size_t expected) {
    std::vector<Distance> d(r.count(8));
    if (d.size() != expected) {
        throw FormatError("distance array has the wrong length");
    }
    for (auto& x : d) {
        x = r.f64();
    }
    return d;
}

} // namespace ftoracle::detail
