#include <array>

#include <gtest/gtest.h>

#include "ftoracle/generators.hpp"
#include "ftoracle/oracle_s13.hpp"
#include "ftoracle/replacement.hpp"
#include "test_support.hpp"

namespace ftoracle {
namespace {

using testing::c5w;
using testing::edge_of;

double case_bound(int c) {
    static const std::array<double, 9> bounds{1, 7, 7, 11, 13, 0, 11, 13, 13};
    return bounds.at(c);
}

OracleS13 sparse_build(const Graph& g, std::span<const VertexId> sources, std::uint64_t seed) {
    S13Options opt;
    opt.seed = seed;
    opt.landmarks.first_probability = 0.85;
    opt.landmarks.sub_probability = 0.4;
    return OracleS13::build(g, sources, opt);
}

// Every query of o against exact distances, per-case bounds and the
// leg-length bounds relating vx, xy, ys to sv.
void check_all_queries(const OracleS13& o, const Graph& g) {
    ExactReplacementTable exact(g, o.sources());
    for (VertexId s : o.sources()) {
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            const Distance sv = exact.base(s, v);
            for (EdgeId f = 0; f < g.num_edges(); ++f) {
                S13Trace t;
                Distance est = o.query(s, v, f, &t);
                Distance ex = exact.lookup(s, v, f);
                ASSERT_LE(t.counters.lca_queries, 8u);
                ASSERT_LE(t.counters.table_reads, 3u);
                ASSERT_EQ(o.classify_case(s, v, f), t.case_id);
                ASSERT_NE(t.case_id, 5) << s << " " << v << " " << f;
                if (t.fault_on_source_path) {
                    ASSERT_LE(t.base_vx, sv);
                    ASSERT_LE(t.base_xy, 2 * sv);
                    ASSERT_LE(t.base_ys, 4 * sv);
                    ASSERT_EQ(t.x, o.nearest1(v));
                    ASSERT_EQ(t.y, o.nearest2(t.x));
                }
                if (ex == kUnreachable) {
                    ASSERT_EQ(est, kUnreachable);
                    continue;
                }
                ASSERT_GE(est, ex);
                if (!t.fault_on_source_path) {
                    ASSERT_EQ(est, ex);
                    ASSERT_EQ(t.case_id, 0);
                    continue;
                }
                ASSERT_LE(est, case_bound(t.case_id) * ex) << "case " << t.case_id;
                if (t.case_id == 1) {
                    ASSERT_LE(est, 7 * sv);
                }
            }
        }
    }
}

TEST(OracleS13Test, CaseNumbering) {
    EXPECT_EQ(s13_case(false, false, false), 1);
    EXPECT_EQ(s13_case(false, false, true), 2);
    EXPECT_EQ(s13_case(false, true, false), 3);
    EXPECT_EQ(s13_case(true, false, false), 4);
    EXPECT_EQ(s13_case(false, true, true), 5);
    EXPECT_EQ(s13_case(true, false, true), 6);
    EXPECT_EQ(s13_case(true, true, false), 7);
    EXPECT_EQ(s13_case(true, true, true), 8);
}

TEST(OracleS13Test, FiveCycle) {
    Graph g = c5w();
    std::vector<VertexId> s{0};
    OracleS13 o = OracleS13::build(g, s);
    EXPECT_EQ(o.query(0, 3, edge_of(g, 4, 0)), 6);
    EXPECT_EQ(o.query(0, 3), 6);
    Distance est = o.query(0, 3, edge_of(g, 1, 2));
    EXPECT_GE(est, 9);
    EXPECT_LE(est, 13 * 9);
    EXPECT_EQ(o.query(0, 3, VertexId{2}, VertexId{1}), est);
    check_all_queries(o, g);
}

TEST(OracleS13Test, AllSourcesLeavesTablesEmpty) {
    Graph g = random_connected_graph(27, 20, 10, 2);
    auto all = sample_sources(27, 27, 0);
    OracleS13 o = OracleS13::build(g, all);
    S13SizeReport r = o.measure();
    EXPECT_EQ(r.dist1_entries, 0u);
    EXPECT_EQ(r.dist2_entries, 0u);
    ExactReplacementTable exact(g, all);
    for (VertexId v = 0; v < 27; ++v) {
        EXPECT_EQ(o.nearest1(v), v);
        EXPECT_EQ(o.nearest2(v), v);
        for (EdgeId f = 0; f < g.num_edges(); ++f) {
            EXPECT_EQ(o.query(5, v, f), exact.lookup(5, v, f));
        }
    }
}

TEST(OracleS13Test, LevelsNestAndRowsRespectHopBounds) {
    Graph g = random_connected_graph(125, 125, 100, 6);
    auto sources = sample_sources(125, 5, 6);
    OracleS13 o = sparse_build(g, sources, 6);
    const auto& l1 = o.landmarks1().members;
    const auto& l2 = o.landmarks2().members;
    EXPECT_TRUE(std::includes(l1.begin(), l1.end(), l2.begin(), l2.end()));
    S13SizeReport r = o.measure();
    EXPECT_EQ(r.hop_threshold1, 5u);
    EXPECT_EQ(r.hop_threshold2, 25u);
    EXPECT_LE(r.max_hops1, 5u);
    EXPECT_LE(r.max_hops2, 25u);
    EXPECT_LE(r.dist1_entries, r.dist1_cap);
    EXPECT_LE(r.dist2_entries, r.dist2_cap);
    EXPECT_LE(r.truncated_tree_vertices, r.truncated_tree_cap);
    for (VertexId v = 0; v < 125; ++v) {
        EXPECT_LE(o.dist1_row(v).size(), 5u);
    }
    for (VertexId u : o.targets1()) {
        EXPECT_LE(o.dist2_row(u).size(), 25u);
        EXPECT_TRUE(o.ball_tree(u).contains(u));
    }
    for (VertexId v = 0; v < 125; ++v) {
        EXPECT_TRUE(o.ball_tree(o.nearest1(v)).contains(v));
    }
}

TEST(OracleS13Test, NearestTargets) {
    Graph g = random_connected_graph(100, 100, 50, 8);
    auto sources = sample_sources(100, 4, 8);
    OracleS13 o = sparse_build(g, sources, 8);
    auto nearest_in = [&](std::span<const VertexId> set, VertexId v) {
        ShortestPathTree t = canonical_dijkstra(g, v);
        VertexId best = kNoVertex;
        for (VertexId u : set) {
            if (best == kNoVertex || t.dist(u) < t.dist(best)) {
                best = u;
            }
        }
        return best;
    };
    for (VertexId v = 0; v < 100; ++v) {
        EXPECT_EQ(o.nearest1(v), nearest_in(o.targets1(), v));
    }
    for (VertexId u : o.targets1()) {
        EXPECT_EQ(o.nearest2(u), nearest_in(o.targets2(), u));
    }
    VertexId outside = kNoVertex;
    for (VertexId v = 0; v < 100 && outside == kNoVertex; ++v) {
        if (!std::binary_search(o.targets1().begin(), o.targets1().end(), v)) {
            outside = v;
        }
    }
    ASSERT_NE(outside, kNoVertex);
    EXPECT_THROW(o.nearest2(outside), DomainError);
}

TEST(OracleS13Test, TablesAreExact) {
    Graph g = random_connected_graph(80, 80, 30, 10);
    auto sources = sample_sources(80, 3, 10);
    OracleS13 o = sparse_build(g, sources, 10);
    std::size_t checked = 0;
    for (VertexId v = 0; v < 80; ++v) {
        VertexId x = o.nearest1(v);
        auto path = canonical_dijkstra(g, x).path_from_root(v);
        auto row = o.dist1_row(v);
        ASSERT_EQ(row.size(), path.size() - 1);
        for (std::size_t i = 0; i < row.size(); ++i) {
            EXPECT_EQ(row[i].length, exact_replacement_distance(g, v, x, edge_of(g, path[i], path[i + 1])));
            ++checked;
        }
    }
    for (VertexId u : o.targets1()) {
        VertexId y = o.nearest2(u);
        auto path = canonical_dijkstra(g, y).path_from_root(u);
        auto row = o.dist2_row(u);
        ASSERT_EQ(row.size(), path.size() - 1);
        for (std::size_t i = 0; i < row.size(); ++i) {
            EXPECT_EQ(row[i].length, exact_replacement_distance(g, u, y, edge_of(g, path[i], path[i + 1])));
            ++checked;
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST(OracleS13Test, StretchCasesAndLegBounds) {
    std::array<std::size_t, 9> seen{};
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Graph g = random_connected_graph(60, 60, 100, seed);
        auto sources = sample_sources(60, 4, seed);
        OracleS13 o = sparse_build(g, sources, seed);
        check_all_queries(o, g);
        for (VertexId s : o.sources()) {
            for (VertexId v = 0; v < 60; ++v) {
                for (EdgeId f = 0; f < g.num_edges(); ++f) {
                    ++seen[o.classify_case(s, v, f)];
                }
            }
        }
    }
    EXPECT_EQ(seen[5], 0u);
    EXPECT_GT(seen[1] + seen[2] + seen[3] + seen[4], 0u);
}

TEST(OracleS13Test, DefaultLandmarksAtSmallScale) {
    Graph g = random_connected_graph(40, 40, 100, 12);
    auto sources = sample_sources(40, 4, 12);
    check_all_queries(OracleS13::build(g, sources), g);
}

TEST(OracleS13Test, Errors) {
    Graph g = c5w();
    std::vector<VertexId> s{0};
    OracleS13 o = OracleS13::build(g, s);
    EXPECT_THROW(o.query(1, 3), DomainError);
    EXPECT_THROW(o.query(0, 9), InputError);
    EXPECT_THROW(o.query(0, 3, 99), InputError);
    std::vector<VertexId> none;
    EXPECT_THROW(OracleS13::build(g, none), InputError);
}

TEST(OracleS13Test, SerializationRoundTrip) {
    Graph g = random_connected_graph(64, 64, 30, 14);
    auto sources = sample_sources(64, 4, 14);
    OracleS13 o = sparse_build(g, sources, 14);
    BinaryWriter w;
    o.serialize(w);
    BinaryReader r(w.bytes());
    OracleS13 back = OracleS13::deserialize(r, g);
    r.expect_end();
    for (VertexId s : sources) {
        for (VertexId v = 0; v < 64; ++v) {
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
