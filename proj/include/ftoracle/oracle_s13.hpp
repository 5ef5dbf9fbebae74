#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ftoracle/graph.hpp"
#include "ftoracle/landmark.hpp"
#include "ftoracle/lca.hpp"
#include "ftoracle/path_descriptor.hpp"
#include "ftoracle/st_oracle.hpp"

namespace ftoracle {

struct S13Options {
    std::uint64_t seed = 0;
    int max_attempts = kDefaultMaxAttempts;
    TwoLevelPolicy landmarks;
};

// Membership pattern of f on (vx, xy, ys), numbered 1..8:
// 1 none, 2 ys, 3 xy, 4 vx, 5 xy+ys, 6 vx+ys, 7 vx+xy, 8 all three.
int s13_case(bool in_vx, bool in_xy, bool in_ys);

struct S13Trace {
    QueryCounters counters;
    bool fault_on_source_path = false;  // f in sv
    VertexId x = kNoVertex;  // t_v
    VertexId y = kNoVertex;  // t'_x
    bool in_vx = false;
    bool in_xy = false;
    bool in_ys = false;
    int case_id = 0;  // 0 when f is absent or off sv
    // Fault-free leg lengths ||vx||, ||xy||, ||ys||.
    Distance base_vx = 0;
    Distance base_xy = 0;
    Distance base_ys = 0;
};

struct S13SizeReport {
    std::size_t n = 0;
    std::size_t sources = 0;
    std::size_t landmarks1 = 0;
    std::size_t landmarks2 = 0;
    std::size_t targets1 = 0;
    std::size_t targets2 = 0;
    std::uint32_t hop_threshold1 = 0;
    std::uint32_t hop_threshold2 = 0;
    double landmark_cap1 = 0.0;
    double landmark_cap2 = 0.0;
    std::size_t dist1_entries = 0;  // sum over v of |v t_v|
    std::size_t dist1_cap = 0;  // n * floor(n^(1/3))
    std::size_t dist2_entries = 0;  // sum over u in T1 of |u t'_u|
    std::size_t dist2_cap = 0;  // |T1| * floor(n^(2/3))
    std::size_t truncated_tree_vertices = 0;  // nodes over all ball trees
    std::size_t truncated_tree_cap = 0;  // n * floor(n^(1/3))
    std::uint32_t max_hops1 = 0;
    std::uint32_t max_hops2 = 0;
    std::size_t full_tree_vertices = 0;
    std::size_t path_tree_vertices = 0;
    std::size_t st_entries = 0;
    std::size_t lca_words = 0;

    std::size_t total_entries() const { return dist1_entries + dist2_entries + st_entries; }
    std::string to_json() const;
};

// Stretch-13 sourcewise oracle for one edge fault. Two landmark levels
// L2 ⊆ L1 give T1 = S ∪ L1 and T2 = S ∪ L2. Each v keeps x = t_v (nearest in
// T1) with Dist1 over v x; each u in T1 keeps t'_u (nearest in T2) with Dist2
// over u t'_u; the ST oracle covers S x T2. A query with f on sv returns
// ||vx <> f|| + ||xy <> f|| + ||ys <> f|| with y = t'_x.
//
// Every T1 vertex gets a truncated tree over its ball, so the vx edge test
// always has a tree, whether x is a landmark or a source.
//
// Holds a pointer to the graph, which must outlive the oracle.
class OracleS13 {
  public:
    OracleS13() = default;
    static OracleS13 build(const Graph& g, std::span<const VertexId> sources, const S13Options& options = {});

    // f == kNoEdge means no failure. Throws DomainError if s is not a source.
    Distance query(VertexId s, VertexId v, EdgeId f = kNoEdge, S13Trace* trace = nullptr) const;
    Distance query(VertexId s, VertexId v, VertexId fault_a, VertexId fault_b, S13Trace* trace = nullptr) const;
    // 0 when the query takes the fault-free path, else 1..8.
    int classify_case(VertexId s, VertexId v, EdgeId f) const;

    // Legs s -> y -> x -> v, or the single leg s -> v when f is off sv.
    std::vector<PathDescriptor> query_path(VertexId s, VertexId v, EdgeId f = kNoEdge) const;

    S13SizeReport measure() const;

    const Graph& graph() const { return *g_; }
    std::span<const VertexId> sources() const { return st_.sources(); }
    const LandmarkSet& landmarks1() const { return landmarks1_; }
    const LandmarkSet& landmarks2() const { return landmarks2_; }
    std::span<const VertexId> targets1() const { return targets1_; }
    std::span<const VertexId> targets2() const { return targets2_; }
    const StOracle& st() const { return st_; }
    VertexId nearest1(VertexId v) const { return nearest1_.at(v); }
    Distance nearest1_dist(VertexId v) const { return nearest1_dist_.at(v); }
    // Defined for u in T1 only; throws DomainError otherwise.
    VertexId nearest2(VertexId u) const;
    Distance nearest2_dist(VertexId u) const;
    std::span<const ReplacementEntry> dist1_row(VertexId v) const;
    std::span<const ReplacementEntry> dist2_row(VertexId u) const;
    // Truncated tree over Ball(u), u in T1.
    const IndexedTree& ball_tree(VertexId u) const;
    // Full tree rooted at u in T2.
    const IndexedTree& full_tree(VertexId u) const;
    // Full trees only; usable by CanonicalPaths.
    const ShortestPathTree* stored_tree(VertexId root) const;

    void serialize(BinaryWriter& w) const;
    static OracleS13 deserialize(BinaryReader& r, const Graph& g);

  private:
    void index_targets();
    // Forests over the ball trees and over the t'_u paths of T1, derived from
    // stored trees and nearest arrays.
    void index_forests();
    std::uint32_t slot1(VertexId u) const;

    const Graph* g_ = nullptr;
    LandmarkSet landmarks1_;
    LandmarkSet landmarks2_;
    std::vector<VertexId> targets1_;
    std::vector<VertexId> targets2_;
    std::vector<std::uint32_t> target1_slot_;
    std::vector<std::uint32_t> target2_slot_;
    StOracle st_;
    // Full trees for T2 vertices that are not sources.
    std::vector<IndexedTree> landmark_trees_;
    std::vector<std::uint32_t> landmark_tree_slot_;
    // Per T1 slot.
    std::vector<IndexedTree> ball_trees_;
    std::vector<VertexId> nearest1_;
    std::vector<Distance> nearest1_dist_;
    std::vector<VertexId> nearest2_;  // per T1 slot
    std::vector<Distance> nearest2_dist_;
    std::vector<std::uint64_t> row1_offset_;  // per vertex, plus end
    std::vector<ReplacementEntry> dist1_;
    std::vector<std::uint64_t> row2_offset_;  // per T1 slot, plus end
    std::vector<ReplacementEntry> dist2_;
    // vx tests run on the ball trees; xy tests on T(y) cut down to the paths
    // u t'_u with t'_u = y, which are disjoint across y for the same reason
    // balls are.
    BallForest forest1_;
    std::vector<IndexedTree> path_trees2_;  // per T2 slot
    BallForest forest2_;
};

} // namespace ftoracle
