#include <gtest/gtest.h>

#include "ftoracle/generators.hpp"
#include "ftoracle/lca.hpp"
#include "test_support.hpp"

namespace ftoracle {
namespace {

// Marks the ancestors of x, then walks up from y to the first marked one.
VertexId naive_lca(const ShortestPathTree& t, VertexId x, VertexId y) {
    std::vector<char> marked(t.graph_size(), 0);
    for (VertexId a = x; a != kNoVertex; a = t.parent(a)) {
        marked[a] = 1;
    }
    VertexId b = y;
    while (!marked[b]) {
        b = t.parent(b);
    }
    return b;
}

bool naive_edge_on_path(const ShortestPathTree& t, VertexId v, VertexId a, VertexId b) {
    for (VertexId x = v; t.parent(x) != kNoVertex; x = t.parent(x)) {
        VertexId p = t.parent(x);
        if ((x == a && p == b) || (x == b && p == a)) {
            return true;
        }
    }
    return false;
}

IndexedTree path_tree() { return IndexedTree(canonical_dijkstra(path_graph(4), 0)); }

TEST(LcaTest, PathTree) {
    IndexedTree t = path_tree();
    EXPECT_EQ(t.lca(2, 3), 2u);
    EXPECT_EQ(t.lca(3, 3), 3u);
    EXPECT_EQ(t.lca(3, 0), 0u);
    EXPECT_TRUE(t.edge_on_path(3, 1, 2));
    EXPECT_TRUE(t.edge_on_path(3, 2, 1));
    EXPECT_FALSE(t.edge_on_path(1, 2, 3));
}

TEST(LcaTest, Star) {
    IndexedTree t(canonical_dijkstra(star_graph(4), 0));
    EXPECT_EQ(t.lca(1, 2), 0u);
    EXPECT_EQ(t.lca(3, 0), 0u);
}

TEST(LcaTest, FiveCycleOffPathEdge) {
    IndexedTree t(canonical_dijkstra(testing::c5w(), 0));
    EXPECT_FALSE(t.edge_on_path(3, 4, 0));
    EXPECT_TRUE(t.edge_on_path(3, 1, 2));
}

TEST(LcaTest, EdgeIndexFromRoot) {
    ShortestPathTree p = canonical_dijkstra(path_graph(4), 0);
    EXPECT_EQ(edge_index_from_root(p, 0, 1), 1u);
    EXPECT_EQ(edge_index_from_root(p, 1, 0), 1u);
    EXPECT_EQ(edge_index_from_root(p, 2, 3), 3u);
    EXPECT_EQ(edge_index_from_root(canonical_dijkstra(star_graph(4), 0), 0, 2), 1u);
    EXPECT_THROW(edge_index_from_root(p, 0, 2), InputError);
    IndexedTree t = path_tree();
    EXPECT_EQ(t.path_edge_index(2, 3), 3u);
}

TEST(LcaTest, AbsentVertexIsAnError) {
    std::vector<VertexId> ball{0, 1};
    IndexedTree t(canonical_dijkstra(path_graph(4), 0, ball));
    EXPECT_EQ(t.lca(0, 1), 0u);
    EXPECT_THROW(t.lca(0, 3), InputError);
    EXPECT_THROW(t.edge_on_path(3, 0, 1), InputError);
    EXPECT_FALSE(t.edge_on_path_if_present(3, 0, 1));
    EXPECT_FALSE(t.edge_on_path_if_present(1, 1, 2));
    EXPECT_TRUE(t.edge_on_path_if_present(1, 0, 1));
    EXPECT_EQ(t.dist(3), kUnreachable);
}

TEST(LcaTest, DisconnectedPresentSetIsRejected) {
    std::vector<TreeNode> nodes{{0, kNoVertex, kNoEdge, 0, 0}, {2, 1, 1, 2, 2}};
    ShortestPathTree t(4, nodes, true);
    EXPECT_THROW(LcaIndex{t}, ConstructionError);
}

TEST(LcaTest, MatchesNaiveLcaOnRandomTrees) {
    for (std::size_t n : {2u, 17u, 120u, 500u}) {
        Graph g = random_connected_graph(n, n > 2 ? n / 2 : 0, 7, n);
        ShortestPathTree t = canonical_dijkstra(g, static_cast<VertexId>(n / 3));
        IndexedTree idx(t);
        const VertexId step = n > 200 ? 3 : 1;
        for (VertexId x = 0; x < n; x += step) {
            for (VertexId y = 0; y < n; ++y) {
                ASSERT_EQ(idx.lca(x, y), naive_lca(t, x, y)) << n << ": " << x << " " << y;
            }
            EXPECT_EQ(idx.is_ancestor(t.root(), x), true);
        }
    }
}

TEST(LcaTest, EdgeTestMatchesParentWalk) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Graph g = random_connected_graph(60, 60, 4, seed);
        ShortestPathTree t = canonical_dijkstra(g, 0);
        IndexedTree idx(t);
        for (VertexId v = 0; v < 60; ++v) {
            for (const Edge& e : g.edges()) {
                QueryCounters c;
                ASSERT_EQ(idx.edge_on_path(v, e.u, e.v, &c), naive_edge_on_path(t, v, e.u, e.v));
                EXPECT_LE(c.lca_queries, 2u);
                if (naive_edge_on_path(t, v, e.u, e.v)) {
                    EXPECT_EQ(idx.path_edge_index(e.u, e.v), edge_index_from_root(t, e.u, e.v));
                }
            }
        }
    }
}

TEST(LcaTest, TruncatedTreeOverBall) {
    Graph g = random_connected_graph(80, 40, 5, 3);
    ShortestPathTree full = canonical_dijkstra(g, 5);
    std::vector<VertexId> ball;
    for (const TreeNode& node : full.nodes()) {
        if (node.hops <= 3) {
            ball.push_back(node.vertex);
        }
    }
    ShortestPathTree part = canonical_dijkstra(g, 5, ball);
    IndexedTree idx(part);
    for (VertexId x : ball) {
        for (VertexId y : ball) {
            EXPECT_EQ(idx.lca(x, y), naive_lca(full, x, y));
        }
    }
}

// Voronoi cells around a few centres, ties to the smaller centre id.
std::vector<std::vector<VertexId>> cells(const Graph& g, const std::vector<VertexId>& centres) {
    std::vector<ShortestPathTree> trees;
    for (VertexId c : centres) {
        trees.push_back(canonical_dijkstra(g, c));
    }
    std::vector<std::vector<VertexId>> out(centres.size());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < centres.size(); ++i) {
            if (trees[i].dist(v) < trees[best].dist(v)) {
                best = i;
            }
        }
        out[best].push_back(v);
    }
    return out;
}

TEST(BallForestTest, AgreesWithPerTreeTest) {
    Graph g = random_connected_graph(150, 150, 9, 8);
    std::vector<VertexId> centres{3, 40, 77, 120, 149};
    auto parts = cells(g, centres);
    std::vector<IndexedTree> trees;
    std::vector<VertexId> owner(g.num_vertices());
    for (std::size_t i = 0; i < centres.size(); ++i) {
        trees.emplace_back(canonical_dijkstra(g, centres[i], parts[i]));
        for (VertexId v : parts[i]) {
            owner[v] = static_cast<VertexId>(i);
        }
    }
    BallForest forest(g.num_vertices(), trees);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        const IndexedTree& t = trees[owner[v]];
        EXPECT_EQ(forest.owner(v), t.root());
        EXPECT_EQ(forest.hops(v), t.tree().hops(v));
        for (const Edge& e : g.edges()) {
            QueryCounters c;
            bool expected = t.edge_on_path_if_present(v, e.u, e.v);
            ASSERT_EQ(forest.edge_on_path(v, e.u, e.v, &c), expected);
            EXPECT_LE(c.lca_queries, 2u);
            if (expected) {
                EXPECT_EQ(forest.path_edge_index(e.u, e.v), t.path_edge_index(e.u, e.v));
            }
        }
    }
}

TEST(BallForestTest, OverlapIsRejected) {
    Graph g = path_graph(5);
    std::vector<VertexId> a{0, 1, 2};
    std::vector<VertexId> b{2, 3, 4};
    std::vector<IndexedTree> trees{IndexedTree(canonical_dijkstra(g, 0, a)), IndexedTree(canonical_dijkstra(g, 4, b))};
    EXPECT_THROW(BallForest(5, trees), ConstructionError);
}

}  // namespace
}  // namespace ftoracle
