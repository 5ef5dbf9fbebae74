#include <gtest/gtest.h>

#include "ftoracle/generators.hpp"
#include "ftoracle/oracle_s13.hpp"
#include "ftoracle/oracle_s5.hpp"
#include "ftoracle/path_descriptor.hpp"
#include "ftoracle/replacement.hpp"
#include "test_support.hpp"

namespace ftoracle {
namespace {

using testing::c5w;
using testing::edge_of;
using testing::triangle;

TEST(PathRecTest, TriangleReplacement) {
    Graph g = triangle();
    PathDescriptor d = decompose_replacement(g, 0, 2, edge_of(g, 0, 1));
    EXPECT_EQ(d.total_length, 3);
    CanonicalPaths paths(g);
    EXPECT_EQ(expand(d, g, paths), (std::vector<VertexId>{0, 2}));
}

TEST(PathRecTest, FiveCycleReplacement) {
    Graph g = c5w();
    PathDescriptor d = decompose_replacement(g, 0, 3, edge_of(g, 1, 2));
    EXPECT_EQ(d.total_length, 9);
    CanonicalPaths paths(g);
    EXPECT_EQ(expand(d, g, paths), (std::vector<VertexId>{0, 4, 3}));
}

TEST(PathRecTest, OffPathFaultGivesSingleSegment) {
    Graph g = c5w();
    PathDescriptor d = decompose_replacement(g, 0, 3, edge_of(g, 4, 0));
    EXPECT_FALSE(d.has_bridge());
    EXPECT_EQ(d.total_length, 6);
    CanonicalPaths paths(g);
    EXPECT_EQ(expand(d, g, paths), (std::vector<VertexId>{0, 1, 2, 3}));
}

TEST(PathRecTest, TrivialSegment) {
    Graph g = c5w();
    CanonicalPaths paths(g);
    PathDescriptor d = PathDescriptor::canonical(2, 2, 0);
    EXPECT_EQ(expand(d, g, paths), (std::vector<VertexId>{2}));
    std::vector<VertexId> single{2};
    EXPECT_EQ(walk_length(single, g, kNoEdge), 0);
}

TEST(PathRecTest, DisconnectedIsUnreachable) {
    Graph g = path_graph(3);
    EXPECT_THROW(decompose_replacement(g, 0, 2, edge_of(g, 1, 2)), UnreachableError);
}

TEST(PathRecTest, ExpandRejectsInconsistentDescriptors) {
    Graph g = c5w();
    CanonicalPaths paths(g);
    // Wrong length.
    EXPECT_THROW(expand(PathDescriptor::canonical(0, 3, 7), g, paths), IntegrityError);
    // Canonical 0..3 uses the avoided edge.
    EXPECT_THROW(expand(PathDescriptor::canonical(0, 3, 6, edge_of(g, 1, 2)), g, paths), IntegrityError);
    // Bridge that is not an edge.
    PathDescriptor d;
    d.source = 0;
    d.target = 3;
    d.bridge_tail = 0;
    d.bridge_head = 2;
    d.total_length = 6;
    EXPECT_THROW(expand(d, g, paths), IntegrityError);
    std::vector<VertexId> jump{0, 2};
    EXPECT_THROW(walk_length(jump, g, kNoEdge), IntegrityError);
    std::vector<PathDescriptor> legs{PathDescriptor::canonical(0, 1, 1), PathDescriptor::canonical(2, 3, 3)};
    EXPECT_THROW(expand_walk(legs, g, paths), IntegrityError);
}

TEST(PathRecTest, ReversedDescriptorExpandsToReversedWalk) {
    Graph g = random_connected_graph(40, 40, 5, 3);
    CanonicalPaths paths(g);
    for (EdgeId f = 0; f < g.num_edges(); f += 3) {
        PathDescriptor d;
        try {
            d = decompose_replacement(g, 1, 30, f);
        } catch (const UnreachableError&) {
            continue;
        }
        auto w = expand(d, g, paths);
        auto r = expand(d.reversed(), g, paths);
        std::reverse(r.begin(), r.end());
        EXPECT_EQ(w, r);
    }
}

TEST(PathRecTest, DecompositionMatchesCanonicalReplacementPath) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Graph g = random_connected_graph(35, 30, 6, seed);
        CanonicalPaths paths(g);
        for (VertexId s : {0u, 11u}) {
            for (EdgeId f = 0; f < g.num_edges(); ++f) {
                ShortestPathTree avoid = canonical_dijkstra(g, s, f);
                for (VertexId t = 0; t < g.num_vertices(); ++t) {
                    if (!avoid.contains(t)) {
                        EXPECT_THROW(decompose_replacement(g, s, t, f), UnreachableError);
                        continue;
                    }
                    PathDescriptor d = decompose_replacement(g, s, t, f);
                    EXPECT_EQ(d.total_length, avoid.dist(t));
                    EXPECT_EQ(expand(d, g, paths), avoid.path_from_root(t)) << s << " " << t << " " << f;
                }
            }
        }
    }
}

// Expands a stored entry anchored at the root of its tree.
void expect_entry_expands(const Graph& g, CanonicalPaths& paths, VertexId anchor, VertexId target,
                          const ReplacementEntry& e, EdgeId f) {
    if (!is_reachable(e.length)) {
        return;
    }
    auto walk = expand(PathDescriptor::from_entry(anchor, target, e, f), g, paths);
    EXPECT_EQ(walk.front(), anchor);
    EXPECT_EQ(walk.back(), target);
    EXPECT_EQ(walk_length(walk, g, f), e.length);
}

TEST(PathRecTest, StoredS5EntriesExpand) {
    Graph g = random_connected_graph(60, 60, 20, 5);
    auto sources = sample_sources(60, 4, 5);
    S5Options opt;
    opt.landmark_probability = 0.5;
    OracleS5 o = OracleS5::build(g, sources, opt);
    CanonicalPaths paths(g, [&](VertexId r) { return o.stored_tree(r); });
    for (VertexId v = 0; v < 60; ++v) {
        VertexId t = o.nearest(v);
        auto path = o.target_tree(t).tree().path_from_root(v);
        auto row = o.dist_t_row(v);
        for (std::size_t i = 0; i < row.size(); ++i) {
            expect_entry_expands(g, paths, t, v, row[i], edge_of(g, path[i], path[i + 1]));
        }
    }
    for (VertexId s : sources) {
        for (VertexId t : o.targets()) {
            for (EdgeId f = 0; f < g.num_edges(); f += 2) {
                if (!is_reachable(o.st().query(s, t, f))) {
                    continue;
                }
                PathDescriptor d = o.st().path(s, t, f);
                EXPECT_EQ(walk_length(expand(d, g, paths), g, f), o.st().query(s, t, f));
            }
        }
    }
}

TEST(PathRecTest, StoredS13EntriesExpand) {
    Graph g = random_connected_graph(64, 64, 20, 6);
    auto sources = sample_sources(64, 4, 6);
    S13Options opt;
    opt.landmarks = {0.85, 0.4};
    OracleS13 o = OracleS13::build(g, sources, opt);
    CanonicalPaths paths(g, [&](VertexId r) { return o.stored_tree(r); });
    for (VertexId v = 0; v < 64; ++v) {
        VertexId x = o.nearest1(v);
        auto path = o.ball_tree(x).tree().path_from_root(v);
        auto row = o.dist1_row(v);
        for (std::size_t i = 0; i < row.size(); ++i) {
            expect_entry_expands(g, paths, x, v, row[i], edge_of(g, path[i], path[i + 1]));
        }
    }
    for (VertexId u : o.targets1()) {
        VertexId y = o.nearest2(u);
        auto path = o.full_tree(y).tree().path_from_root(u);
        auto row = o.dist2_row(u);
        for (std::size_t i = 0; i < row.size(); ++i) {
            expect_entry_expands(g, paths, y, u, row[i], edge_of(g, path[i], path[i + 1]));
        }
    }
}

template <typename Oracle>
void expect_query_paths(const Oracle& o, const Graph& g) {
    CanonicalPaths paths(g, [&](VertexId r) { return o.stored_tree(r); });
    std::size_t walks = 0;
    for (VertexId s : o.sources()) {
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            for (EdgeId f = 0; f < g.num_edges(); ++f) {
                Distance est = o.query(s, v, f);
                if (!is_reachable(est)) {
                    EXPECT_THROW(o.query_path(s, v, f), UnreachableError);
                    continue;
                }
                auto legs = o.query_path(s, v, f);
                auto walk = expand_walk(legs, g, paths);
                ASSERT_EQ(walk.front(), s);
                ASSERT_EQ(walk.back(), v);
                ASSERT_EQ(walk_length(walk, g, f), est);
                ++walks;
            }
        }
    }
    EXPECT_GT(walks, 0u);
}

TEST(PathRecTest, S5QueryPathsAreWalksOfTheEstimatedLength) {
    Graph g = random_connected_graph(40, 40, 30, 7);
    auto sources = sample_sources(40, 3, 7);
    S5Options opt;
    opt.landmark_probability = 0.5;
    expect_query_paths(OracleS5::build(g, sources, opt), g);
    Graph c = c5w();
    std::vector<VertexId> zero{0};
    OracleS5 o = OracleS5::build(c, zero);
    auto legs = o.query_path(0, 3, edge_of(c, 1, 2));
    EXPECT_LE(legs.size(), 2u);
}

TEST(PathRecTest, S13QueryPathsAreWalksOfTheEstimatedLength) {
    Graph g = random_connected_graph(40, 40, 30, 8);
    auto sources = sample_sources(40, 3, 8);
    S13Options opt;
    opt.landmarks = {0.85, 0.4};
    expect_query_paths(OracleS13::build(g, sources, opt), g);
    Graph p = path_graph(4);
    std::vector<VertexId> zero{0};
    expect_query_paths(OracleS13::build(p, zero), p);
}

}  // namespace
}  // namespace ftoracle
