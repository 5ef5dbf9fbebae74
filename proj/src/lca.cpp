#include "ftoracle/lca.hpp"

#include <bit>

namespace ftoracle {

LcaIndex::LcaIndex(const ShortestPathTree& t) {
    const auto nodes = t.nodes();
    const std::size_t k = nodes.size();
    if (k == 0 || nodes[0].parent != kNoVertex) {
        throw ConstructionError("tree does not start at its root");
    }
    // Children in CSR form over local positions. Settle order puts every
    // parent before its children, so a missing parent means a disconnected
    // present set.
    std::vector<std::uint32_t> parent_local(k, kNoVertex);
    std::vector<std::uint32_t> child_count(k + 1, 0);
    for (std::uint32_t i = 1; i < k; ++i) {
        std::uint32_t p = t.local_index(nodes[i].parent);
        if (nodes[i].parent == kNoVertex || p == kNoVertex || p >= i) {
            throw ConstructionError("present vertices of the tree rooted at " + std::to_string(t.root()) +
                                    " are not connected to the root (vertex " +
                                    std::to_string(nodes[i].vertex) + ")");
        }
        parent_local[i] = p;
        ++child_count[p + 1];
    }
    for (std::size_t i = 0; i < k; ++i) {
        child_count[i + 1] += child_count[i];
    }
    std::vector<std::uint32_t> children(k > 0 ? k - 1 : 0);
    std::vector<std::uint32_t> fill(child_count.begin(), child_count.end() - 1);
    for (std::uint32_t i = 1; i < k; ++i) {
        children[fill[parent_local[i]]++] = i;
    }

    span_.resize(k);
    tour_.reserve(2 * k - 1);
    for (std::uint32_t i = 0; i < k; ++i) {
        span_[i].depth = nodes[i].hops;
    }

    // Iterative DFS: (vertex, next child cursor).
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;
    stack.emplace_back(0, child_count[0]);
    span_[0].first = 0;
    tour_.push_back(0);
    while (!stack.empty()) {
        auto& [v, cursor] = stack.back();
        if (cursor < child_count[v + 1]) {
            std::uint32_t c = children[cursor++];
            span_[c].first = static_cast<std::uint32_t>(tour_.size());
            tour_.push_back(c);
            stack.emplace_back(c, child_count[c]);
        } else {
            span_[v].last = static_cast<std::uint32_t>(tour_.size() - 1);
            stack.pop_back();
            if (!stack.empty()) {
                tour_.push_back(stack.back().first);
            }
        }
    }

    const std::size_t len = tour_.size();
    sparse_.push_back(tour_);
    for (std::size_t span = 2; span <= len; span *= 2) {
        const auto& prev = sparse_.back();
        std::vector<std::uint32_t> level(len - span + 1);
        for (std::size_t i = 0; i + span <= len; ++i) {
            std::uint32_t a = prev[i];
            std::uint32_t b = prev[i + span / 2];
            level[i] = span_[a].depth <= span_[b].depth ? a : b;
        }
        sparse_.push_back(std::move(level));
    }
}

std::uint32_t LcaIndex::lca_local(std::uint32_t x, std::uint32_t y) const {
    std::uint32_t l = span_[x].first;
    std::uint32_t r = span_[y].first;
    if (l > r) {
        std::swap(l, r);
    }
    const std::uint32_t width = r - l + 1;
    const unsigned level = std::bit_width(width) - 1;
    std::uint32_t a = sparse_[level][l];
    std::uint32_t b = sparse_[level][r + 1 - (1u << level)];
    return span_[a].depth <= span_[b].depth ? a : b;
}

std::size_t LcaIndex::footprint() const {
    std::size_t total = tour_.size() + 3 * span_.size();
    for (const auto& level : sparse_) {
        total += level.size();
    }
    return total;
}

namespace {

std::uint32_t require_local(const ShortestPathTree& t, VertexId v) {
    std::uint32_t i = t.local_index(v);
    if (i == kNoVertex) {
        throw InputError("vertex " + std::to_string(v) + " is not present in the tree rooted at " +
                         std::to_string(t.root()));
    }
    return i;
}

} // namespace

IndexedTree::IndexedTree(ShortestPathTree t) : tree_(std::move(t)), index_(tree_) {
    if (!tree_.truncated()) {
        by_vertex_.resize(tree_.graph_size());
        const auto nodes = tree_.nodes();
        for (std::uint32_t i = 0; i < nodes.size(); ++i) {
            by_vertex_[nodes[i].vertex] = {index_.span_local(i), nodes[i].dist};
        }
    }
}

VertexId IndexedTree::lca(VertexId x, VertexId y, QueryCounters* counters) const {
    std::uint32_t lx = require_local(tree_, x);
    std::uint32_t ly = require_local(tree_, y);
    if (counters) {
        ++counters->lca_queries;
    }
    return tree_.nodes()[index_.lca_local(lx, ly)].vertex;
}

IndexedTree::Record IndexedTree::record(VertexId v) const {
    if (!by_vertex_.empty()) {
        return v < by_vertex_.size() ? by_vertex_[v] : Record{};
    }
    const std::uint32_t i = tree_.local_index(v);
    if (i == kNoVertex) {
        return {};
    }
    return {index_.span_local(i), tree_.nodes()[i].dist};
}

namespace {

// The three questions: lca(v, a) == a, lca(v, b) == b, and hop counts of a and
// b one apart. The first two are read off the tour spans.
bool three_questions(const TourSpan& v, const TourSpan& a, const TourSpan& b) {
    if (!a.encloses(v) || !b.encloses(v)) {
        return false;
    }
    return a.depth + 1 == b.depth || b.depth + 1 == a.depth;
}

} // namespace

bool IndexedTree::edge_on_path(VertexId v, VertexId a, VertexId b, QueryCounters* counters) const {
    const TourSpan sv = span(v);
    const TourSpan sa = span(a);
    const TourSpan sb = span(b);
    if (!sv.present() || !sa.present() || !sb.present()) {
        for (VertexId x : {v, a, b}) {
            require_local(tree_, x);
        }
    }
    if (counters) {
        counters->lca_queries += 2;
    }
    return three_questions(sv, sa, sb);
}

bool IndexedTree::edge_on_path_if_present(VertexId v, VertexId a, VertexId b, QueryCounters* counters) const {
    const TourSpan sv = span(v);
    const TourSpan sa = span(a);
    const TourSpan sb = span(b);
    if (!sv.present() || !sa.present() || !sb.present()) {
        return false;
    }
    if (counters) {
        counters->lca_queries += 2;
    }
    return three_questions(sv, sa, sb);
}

bool IndexedTree::is_ancestor(VertexId a, VertexId v) const {
    return index_.is_ancestor_local(require_local(tree_, a), require_local(tree_, v));
}

BallForest::BallForest(std::size_t graph_size, std::span<const IndexedTree> trees) : records_(graph_size) {
    for (const IndexedTree& t : trees) {
        const auto nodes = t.tree().nodes();
        for (std::uint32_t i = 0; i < nodes.size(); ++i) {
            Record& r = records_.at(nodes[i].vertex);
            if (r.owner != kNoVertex) {
                throw ConstructionError("vertex " + std::to_string(nodes[i].vertex) + " lies in the trees of both " +
                                        std::to_string(r.owner) + " and " + std::to_string(t.root()));
            }
            r = {t.root(), t.index().span_local(i)};
        }
    }
}

bool BallForest::edge_on_path(VertexId v, VertexId a, VertexId b, QueryCounters* counters) const {
    const Record& rv = records_.at(v);
    const Record& ra = records_.at(a);
    const Record& rb = records_.at(b);
    if (rv.owner == kNoVertex || ra.owner != rv.owner || rb.owner != rv.owner) {
        return false;
    }
    if (counters) {
        counters->lca_queries += 2;
    }
    return three_questions(rv.span, ra.span, rb.span);
}

std::uint32_t edge_index_from_root(const ShortestPathTree& t, VertexId a, VertexId b) {
    const TreeNode& na = t.node(a);
    const TreeNode& nb = t.node(b);
    if (nb.parent == a) {
        return na.hops + 1;
    }
    if (na.parent == b) {
        return nb.hops + 1;
    }
    throw InputError("edge {" + std::to_string(a) + "," + std::to_string(b) +
                     "} is not on any root path of the tree rooted at " + std::to_string(t.root()));
}

} // namespace ftoracle
