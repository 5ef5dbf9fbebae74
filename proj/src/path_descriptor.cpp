#include "ftoracle/path_descriptor.hpp"

#include <algorithm>
#include <cmath>

namespace ftoracle {

ReplacementEntry describe_replacement(const DijkstraEngine& engine, const ShortestPathTree& base, VertexId target) {
    ReplacementEntry entry;
    entry.length = engine.dist(target);
    if (!is_reachable(entry.length)) {
        return entry;
    }
    std::vector<VertexId> rho;
    for (VertexId x = target; x != kNoVertex; x = engine.parent(x)) {
        rho.push_back(x);
    }
    std::reverse(rho.begin(), rho.end());
    std::size_t k = 0;
    while (k + 1 < rho.size() && base.contains(rho[k + 1]) && base.parent(rho[k + 1]) == rho[k]) {
        ++k;
    }
    if (k + 1 < rho.size()) {
        entry.bridge_tail = rho[k];
        entry.bridge_head = rho[k + 1];
    }
    return entry;
}

PathDescriptor PathDescriptor::reversed() const {
    PathDescriptor r = *this;
    std::swap(r.source, r.target);
    std::swap(r.bridge_tail, r.bridge_head);
    return r;
}

PathDescriptor PathDescriptor::canonical(VertexId source, VertexId target, Distance length, EdgeId avoided) {
    PathDescriptor d;
    d.source = source;
    d.target = target;
    d.avoided = avoided;
    d.total_length = length;
    return d;
}

PathDescriptor PathDescriptor::from_entry(VertexId anchor, VertexId target, const ReplacementEntry& e,
                                          EdgeId avoided) {
    PathDescriptor d = canonical(anchor, target, e.length, avoided);
    d.bridge_tail = e.bridge_tail;
    d.bridge_head = e.bridge_head;
    return d;
}

PathDescriptor decompose_replacement(const Graph& g, VertexId s, VertexId t, EdgeId f) {
    g.require_vertex(s);
    g.require_vertex(t);
    g.require_edge(f);
    DijkstraEngine engine(g);
    engine.run(s);
    const ShortestPathTree base = engine.tree();
    engine.run(s, f);
    if (!engine.reached(t)) {
        throw UnreachableError("vertex " + std::to_string(t) + " is unreachable from " + std::to_string(s) +
                               " once edge " + std::to_string(f) + " fails");
    }
    return PathDescriptor::from_entry(s, t, describe_replacement(engine, base, t), f);
}

const ShortestPathTree* CanonicalPaths::find(VertexId root) const {
    if (lookup_) {
        if (const ShortestPathTree* t = lookup_(root)) {
            return t;
        }
    }
    auto it = cache_.find(root);
    return it == cache_.end() ? nullptr : &it->second;
}

std::vector<VertexId> CanonicalPaths::path(VertexId from, VertexId to) {
    g_->require_vertex(from);
    g_->require_vertex(to);
    if (const ShortestPathTree* t = find(from); t && t->contains(to)) {
        return t->path_from_root(to);
    }
    if (const ShortestPathTree* t = find(to); t && t->contains(from)) {
        auto p = t->path_from_root(from);
        std::reverse(p.begin(), p.end());
        return p;
    }
    // Only a full tree settles reachability.
    auto it = cache_.find(from);
    if (it == cache_.end()) {
        it = cache_.emplace(from, canonical_dijkstra(*g_, from)).first;
    }
    const ShortestPathTree* t = &it->second;
    if (!t->contains(to)) {
        return {};
    }
    return t->path_from_root(to);
}

Distance walk_length(std::span<const VertexId> walk, const Graph& g, EdgeId avoided) {
    Distance total = 0.0;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        auto e = g.find_edge(walk[i], walk[i + 1]);
        if (!e) {
            throw IntegrityError("walk steps between non-adjacent vertices " + std::to_string(walk[i]) + " and " +
                                 std::to_string(walk[i + 1]));
        }
        if (*e == avoided) {
            throw IntegrityError("walk uses the failed edge {" + std::to_string(walk[i]) + "," +
                                 std::to_string(walk[i + 1]) + "}");
        }
        total += g.edge(*e).w;
    }
    return total;
}

namespace {

bool same_length(Distance a, Distance b) {
    if (a == b) {
        return true;
    }
    return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
}

std::vector<VertexId> segment(CanonicalPaths& paths, VertexId from, VertexId to) {
    auto p = paths.path(from, to);
    if (p.empty()) {
        throw IntegrityError("descriptor references unreachable pair " + std::to_string(from) + ".." +
                             std::to_string(to));
    }
    return p;
}

std::vector<VertexId> expand_unchecked(const PathDescriptor& d, CanonicalPaths& paths) {
    if (!is_reachable(d.total_length)) {
        throw IntegrityError("cannot expand a descriptor of an unreachable pair");
    }
    if (!d.has_bridge()) {
        return segment(paths, d.source, d.target);
    }
    auto walk = segment(paths, d.source, d.bridge_tail);
    auto tail = segment(paths, d.bridge_head, d.target);
    walk.insert(walk.end(), tail.begin(), tail.end());
    return walk;
}

} // namespace

std::vector<VertexId> expand(const PathDescriptor& d, const Graph& g, CanonicalPaths& paths) {
    auto walk = expand_unchecked(d, paths);
    if (walk.front() != d.source || walk.back() != d.target) {
        throw IntegrityError("expanded walk does not connect the descriptor's endpoints");
    }
    Distance len = walk_length(walk, g, d.avoided);
    if (!same_length(len, d.total_length)) {
        throw IntegrityError("expanded walk has length " + std::to_string(len) + ", descriptor says " +
                             std::to_string(d.total_length));
    }
    return walk;
}

std::vector<VertexId> expand_walk(std::span<const PathDescriptor> legs, const Graph& g, CanonicalPaths& paths) {
    std::vector<VertexId> walk;
    Distance expected = 0.0;
    for (const PathDescriptor& leg : legs) {
        auto part = expand(leg, g, paths);
        if (!walk.empty()) {
            if (walk.back() != part.front()) {
                throw IntegrityError("consecutive legs do not meet");
            }
            walk.pop_back();
        }
        walk.insert(walk.end(), part.begin(), part.end());
        expected += leg.total_length;
    }
    if (!legs.empty()) {
        Distance len = walk_length(walk, g, legs.front().avoided);
        if (!same_length(len, expected)) {
            throw IntegrityError("stitched walk length mismatch");
        }
    }
    return walk;
}

} // namespace ftoracle
