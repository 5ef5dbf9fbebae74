#include <gtest/gtest.h>

#include "ftoracle/generators.hpp"
#include "ftoracle/replacement.hpp"
#include "ftoracle/st_oracle.hpp"
#include "test_support.hpp"

namespace ftoracle {
namespace {

using testing::c5w;
using testing::edge_of;
using testing::triangle;

TEST(StOracleTest, Triangle) {
    Graph g = triangle();
    std::vector<VertexId> s{0}, t{2};
    StOracle o(g, s, t);
    EXPECT_EQ(o.query(0, 2, edge_of(g, 0, 1)), 3);
    EXPECT_EQ(o.query(0, 2, edge_of(g, 0, 2)), 2);
    EXPECT_EQ(o.query(0, 2, kNoEdge), 2);
}

TEST(StOracleTest, FiveCycle) {
    Graph g = c5w();
    std::vector<VertexId> s{0}, t{3};
    StOracle o(g, s, t);
    EXPECT_EQ(o.query(0, 3, edge_of(g, 1, 2)), 9);
    EXPECT_EQ(o.query(0, 3, edge_of(g, 4, 0)), 6);
}

TEST(StOracleTest, BridgeIsUnreachable) {
    Graph g = path_graph(3);
    std::vector<VertexId> s{0}, t{2};
    StOracle o(g, s, t);
    EXPECT_EQ(o.query(0, 2, edge_of(g, 1, 2)), kUnreachable);
    EXPECT_THROW(o.path(0, 2, edge_of(g, 1, 2)), UnreachableError);
}

TEST(StOracleTest, SameEndpointIsZero) {
    Graph g = c5w();
    std::vector<VertexId> s{0, 2}, t{0, 2};
    StOracle o(g, s, t);
    for (EdgeId f = 0; f < g.num_edges(); ++f) {
        EXPECT_EQ(o.query(0, 0, f), 0);
        EXPECT_EQ(o.query(2, 2, f), 0);
    }
}

TEST(StOracleTest, DomainAndInputErrors) {
    Graph g = c5w();
    std::vector<VertexId> s{0}, t{3};
    StOracle o(g, s, t);
    EXPECT_THROW(o.query(1, 3, 0), DomainError);
    EXPECT_THROW(o.query(0, 2, 0), DomainError);
    EXPECT_THROW(o.query(0, 3, 17), InputError);
    std::vector<VertexId> empty, bad{9};
    EXPECT_THROW(StOracle(g, empty, t), InputError);
    EXPECT_THROW(StOracle(g, s, empty), InputError);
    EXPECT_THROW(StOracle(g, bad, t), InputError);
}

TEST(StOracleTest, ExactOnRandomGraphs) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Graph g = random_connected_graph(40, 30, 10, seed);
        auto sources = sample_sources(40, 4, seed);
        auto targets = sample_sources(40, 9, seed + 100);
        StOracle o(g, sources, targets);
        ExactReplacementTable exact(g, sources);
        for (VertexId s : sources) {
            for (VertexId t : targets) {
                for (EdgeId f = 0; f < g.num_edges(); ++f) {
                    QueryCounters c;
                    StOracle::Answer a = o.lookup(s, t, f, &c);
                    ASSERT_EQ(a.length, exact.lookup(s, t, f)) << s << " " << t << " " << f;
                    EXPECT_LE(c.lca_queries, 2u);
                    EXPECT_LE(c.table_reads, 1u);
                    if (!a.fault_on_path) {
                        EXPECT_EQ(c.table_reads, 0u);
                        EXPECT_EQ(a.length, exact.base(s, t));
                    }
                }
            }
        }
    }
}

TEST(StOracleTest, SerializationRoundTrip) {
    Graph g = random_connected_graph(30, 20, 10, 7);
    auto sources = sample_sources(30, 3, 1);
    auto targets = sample_sources(30, 8, 2);
    StOracle o(g, sources, targets);
    BinaryWriter w;
    o.serialize(w);
    BinaryReader r(w.bytes());
    StOracle back = StOracle::deserialize(r, g);
    r.expect_end();
    EXPECT_EQ(back.entry_count(), o.entry_count());
    for (VertexId s : sources) {
        for (VertexId t : targets) {
            for (EdgeId f = 0; f < g.num_edges(); ++f) {
                EXPECT_EQ(back.query(s, t, f), o.query(s, t, f));
            }
        }
    }
    BinaryWriter again;
    back.serialize(again);
    EXPECT_EQ(again.bytes(), w.bytes());
}

TEST(StOracleTest, TruncatedInputIsAFormatError) {
    Graph g = c5w();
    std::vector<VertexId> s{0}, t{3};
    BinaryWriter w;
    StOracle(g, s, t).serialize(w);
    auto bytes = w.bytes();
    bytes.resize(bytes.size() / 2);
    BinaryReader r(bytes);
    EXPECT_THROW(StOracle::deserialize(r, g), FormatError);
}

}  // namespace
}  // namespace ftoracle
