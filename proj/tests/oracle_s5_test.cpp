#include <gtest/gtest.h>

#include "ftoracle/generators.hpp"
#include "ftoracle/oracle_s5.hpp"
#include "ftoracle/replacement.hpp"
#include "test_support.hpp"

namespace ftoracle {
namespace {

using testing::c5w;
using testing::edge_of;

// Checks every query of o against exact distances and the per-case bounds.
void check_all_queries(const OracleS5& o, const Graph& g) {
    ExactReplacementTable exact(g, o.sources());
    for (VertexId s : o.sources()) {
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            for (EdgeId f = 0; f < g.num_edges(); ++f) {
                S5Trace trace;
                Distance est = o.query(s, v, f, &trace);
                Distance ex = exact.lookup(s, v, f);
                ASSERT_LE(trace.counters.lca_queries, 6u);
                ASSERT_LE(trace.counters.table_reads, 2u);
                if (ex == kUnreachable) {
                    ASSERT_EQ(est, kUnreachable);
                    continue;
                }
                ASSERT_GE(est, ex);
                ASSERT_LE(est, 5 * ex) << s << " " << v << " " << f;
                ASSERT_NE(trace.case_id, 1);
                if (!trace.fault_on_source_path) {
                    ASSERT_EQ(est, ex);
                } else if (!trace.fault_on_nearest_path) {
                    ASSERT_LE(est, 3 * ex);
                }
            }
        }
    }
}

TEST(OracleS5Test, FiveCycle) {
    Graph g = c5w();
    std::vector<VertexId> s{0};
    OracleS5 o = OracleS5::build(g, s);
    EXPECT_EQ(o.query(0, 3, edge_of(g, 4, 0)), 6);
    EXPECT_EQ(o.query(0, 3), 6);
    Distance est = o.query(0, 3, edge_of(g, 1, 2));
    EXPECT_GE(est, 9);
    EXPECT_LE(est, 45);
    EXPECT_EQ(o.query(0, 3, VertexId{4}, VertexId{0}), 6);
    EXPECT_EQ(o.query(0, 3, VertexId{1}, VertexId{2}), est);
    EXPECT_EQ(o.query(0, 3, VertexId{1}, VertexId{3}), 6);
}

TEST(OracleS5Test, AllSourcesLeavesDistTEmpty) {
    Graph g = random_connected_graph(30, 20, 10, 1);
    auto all = sample_sources(30, 30, 0);
    OracleS5 o = OracleS5::build(g, all);
    EXPECT_EQ(o.measure().dist_t_entries, 0u);
    ExactReplacementTable exact(g, all);
    for (VertexId v = 0; v < 30; ++v) {
        EXPECT_EQ(o.nearest(v), v);
        for (EdgeId f = 0; f < g.num_edges(); f += 3) {
            EXPECT_EQ(o.query(4, v, f), exact.lookup(4, v, f));
        }
    }
}

TEST(OracleS5Test, TriangleWithOneSource) {
    Graph g = testing::triangle();
    std::vector<VertexId> s{0};
    OracleS5 o = OracleS5::build(g, s);
    check_all_queries(o, g);
}

TEST(OracleS5Test, NearestTargetsAndHopBound) {
    Graph g = random_connected_graph(100, 100, 100, 3);
    auto sources = sample_sources(100, 10, 3);
    S5Options opt;
    opt.landmark_probability = 0.3;
    OracleS5 o = OracleS5::build(g, sources, opt);
    S5SizeReport r = o.measure();
    EXPECT_EQ(r.hop_threshold, 10u);
    EXPECT_LE(r.max_nearest_hops, 10u);
    EXPECT_LE(r.dist_t_entries, 1000u);
    EXPECT_LE(r.landmarks, r.landmark_cap);
    EXPECT_EQ(r.targets, o.targets().size());
    std::vector<ShortestPathTree> trees;
    for (VertexId t : o.targets()) {
        trees.push_back(canonical_dijkstra(g, t));
    }
    for (VertexId v = 0; v < 100; ++v) {
        VertexId best = kNoVertex;
        Distance bd = kUnreachable;
        std::uint32_t hops = 0;
        for (std::size_t i = 0; i < trees.size(); ++i) {
            if (trees[i].dist(v) < bd) {
                bd = trees[i].dist(v);
                best = o.targets()[i];
                hops = trees[i].hops(v);
            }
        }
        EXPECT_EQ(o.nearest(v), best);
        EXPECT_EQ(o.nearest_dist(v), bd);
        EXPECT_LE(hops, 10u);
        EXPECT_EQ(o.dist_t_row(v).size(), hops);
    }
}

TEST(OracleS5Test, DistTEntriesAreExact) {
    Graph g = random_connected_graph(60, 60, 20, 4);
    auto sources = sample_sources(60, 3, 4);
    S5Options opt;
    opt.landmark_probability = 0.5;
    OracleS5 o = OracleS5::build(g, sources, opt);
    std::size_t checked = 0;
    for (VertexId v = 0; v < 60; ++v) {
        VertexId t = o.nearest(v);
        auto path = canonical_dijkstra(g, t).path_from_root(v);
        auto row = o.dist_t_row(v);
        ASSERT_EQ(row.size(), path.size() - 1);
        for (std::size_t i = 0; i < row.size(); ++i) {
            EdgeId fi = edge_of(g, path[i], path[i + 1]);
            EXPECT_EQ(row[i].length, exact_replacement_distance(g, v, t, fi));
            ++checked;
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST(OracleS5Test, StretchAndCasesOnRandomGraphs) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Graph g = random_connected_graph(50, 50, 100, seed);
        auto sources = sample_sources(50, 8, seed);
        S5Options opt;
        opt.seed = seed;
        opt.landmark_probability = 0.6;
        check_all_queries(OracleS5::build(g, sources, opt), g);
    }
}

TEST(OracleS5Test, TraceReportsCase) {
    Graph g = c5w();
    std::vector<VertexId> s{0};
    OracleS5 o = OracleS5::build(g, s);
    S5Trace off;
    o.query(0, 3, edge_of(g, 4, 0), &off);
    EXPECT_FALSE(off.fault_on_source_path);
    EXPECT_EQ(off.case_id, 0);
    EXPECT_EQ(off.counters.table_reads, 0u);
    S5Trace none;
    o.query(0, 3, kNoEdge, &none);
    EXPECT_EQ(none.case_id, 0);
    EXPECT_EQ(none.counters.lca_queries, 0u);
    S5Trace on;
    o.query(0, 3, edge_of(g, 1, 2), &on);
    EXPECT_TRUE(on.fault_on_source_path);
    EXPECT_GE(on.case_id, 2);
    EXPECT_LE(on.case_id, 4);
}

TEST(OracleS5Test, Errors) {
    Graph g = c5w();
    std::vector<VertexId> s{0};
    OracleS5 o = OracleS5::build(g, s);
    EXPECT_THROW(o.query(1, 3), DomainError);
    EXPECT_THROW(o.query(0, 9), InputError);
    EXPECT_THROW(o.query(0, 3, 99), InputError);
    std::vector<VertexId> none;
    EXPECT_THROW(OracleS5::build(g, none), InputError);
}

TEST(OracleS5Test, SerializationRoundTrip) {
    Graph g = random_connected_graph(50, 50, 30, 9);
    auto sources = sample_sources(50, 5, 9);
    S5Options opt;
    opt.landmark_probability = 0.5;
    OracleS5 o = OracleS5::build(g, sources, opt);
    BinaryWriter w;
    o.serialize(w);
    BinaryReader r(w.bytes());
    OracleS5 back = OracleS5::deserialize(r, g);
    r.expect_end();
    for (VertexId s : sources) {
        for (VertexId v = 0; v < 50; ++v) {
            for (EdgeId f = 0; f < g.num_edges(); f += 2) {
                ASSERT_EQ(back.query(s, v, f), o.query(s, v, f));
            }
        }
    }
    BinaryWriter again;
    back.serialize(again);
    EXPECT_EQ(again.bytes(), w.bytes());
    EXPECT_EQ(back.measure().to_json(), o.measure().to_json());
}

}  // namespace
}  // namespace ftoracle
