#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftoracle/graph.hpp"
#include "ftoracle/landmark.hpp"
#include "ftoracle/lca.hpp"
#include "ftoracle/path_descriptor.hpp"
#include "ftoracle/st_oracle.hpp"

namespace ftoracle {

struct S5Options {
    std::uint64_t seed = 0;
    int max_attempts = kDefaultMaxAttempts;
    // Replaces min(1, 3 ln n / sqrt(n)); the hop threshold stays floor(sqrt(n)).
    std::optional<double> landmark_probability;
};

// What one query did, for tests and the verifier.
struct S5Trace {
    QueryCounters counters;
    bool fault_on_source_path = false;  // f in sv
    VertexId nearest = kNoVertex;  // t_v
    bool fault_on_nearest_path = false;  // f in v t_v
    bool fault_on_source_nearest = false;  // f in s t_v
    // 0 when f is absent or off sv, else 1..4 by membership of f in
    // (s t_v, v t_v): 1 both, 2 only s t_v, 3 only v t_v, 4 neither.
    int case_id = 0;
};

struct S5SizeReport {
    std::size_t n = 0;
    std::size_t sources = 0;
    std::size_t landmarks = 0;
    std::size_t targets = 0;
    std::uint32_t hop_threshold = 0;
    double landmark_cap = 0.0;  // 2 n p
    std::size_t dist_t_entries = 0;  // sum over v of |v t_v|
    std::size_t dist_t_cap = 0;  // n * floor(sqrt n)
    std::uint32_t max_nearest_hops = 0;
    std::size_t tree_vertices = 0;  // stored nodes over all full trees
    std::size_t ball_tree_vertices = 0;
    std::size_t st_entries = 0;
    std::size_t lca_words = 0;

    std::size_t total_entries() const { return dist_t_entries + st_entries; }
    std::string to_json() const;
};

// Stretch-5 sourcewise oracle for one edge fault. Targets T = S ∪ L; every
// vertex v keeps its nearest target t_v and the replacement distances
// ||v t_v <> f_i|| for each edge f_i on v t_v, indexed from t_v. A query with
// f on sv returns ||v t_v <> f|| + ||s t_v <> f||.
//
// Holds a pointer to the graph, which must outlive the oracle.
class OracleS5 {
  public:
    OracleS5() = default;
    static OracleS5 build(const Graph& g, std::span<const VertexId> sources, const S5Options& options = {});

    // f == kNoEdge means no failure. Throws DomainError if s is not a source.
    Distance query(VertexId s, VertexId v, EdgeId f = kNoEdge, S5Trace* trace = nullptr) const;
    // Fault given as an unordered vertex pair; a pair that is not an edge is
    // treated as no failure.
    Distance query(VertexId s, VertexId v, VertexId fault_a, VertexId fault_b, S5Trace* trace = nullptr) const;

    // Legs s -> t_v -> v (or the single leg s -> v when f is off sv), whose
    // expansion is a walk in G - f of length query(s, v, f). Throws
    // UnreachableError when the estimate is unreachable.
    std::vector<PathDescriptor> query_path(VertexId s, VertexId v, EdgeId f = kNoEdge) const;

    S5SizeReport measure() const;

    const Graph& graph() const { return *g_; }
    std::span<const VertexId> sources() const { return st_.sources(); }
    const LandmarkSet& landmarks() const { return landmarks_; }
    std::span<const VertexId> targets() const { return targets_; }
    const StOracle& st() const { return st_; }
    VertexId nearest(VertexId v) const { return nearest_.at(v); }
    Distance nearest_dist(VertexId v) const { return nearest_dist_.at(v); }
    std::span<const ReplacementEntry> dist_t_row(VertexId v) const;
    // Full tree rooted at a target.
    const IndexedTree& target_tree(VertexId t) const;
    // Lookup usable by CanonicalPaths.
    const ShortestPathTree* stored_tree(VertexId root) const;

    void serialize(BinaryWriter& w) const;
    static OracleS5 deserialize(BinaryReader& r, const Graph& g);

  private:
    void index_targets();
    // Ball trees and their forest, derived from nearest_ and the full trees.
    void index_balls();

    const Graph* g_ = nullptr;
    LandmarkSet landmarks_;
    std::vector<VertexId> targets_;
    std::vector<std::uint32_t> target_slot_;
    // Trees for targets that are not sources; source trees live in st_.
    std::vector<IndexedTree> landmark_trees_;
    std::vector<std::uint32_t> landmark_tree_slot_;
    StOracle st_;
    std::vector<VertexId> nearest_;
    std::vector<Distance> nearest_dist_;
    std::vector<std::uint64_t> row_offset_;
    std::vector<ReplacementEntry> dist_t_;
    // T(t) cut down to Ball(t) = {v : t_v = t}. Balls are closed under
    // taking tree parents, so f lies on v t_v only if both ends are in
    // Ball(t_v); the forest answers that test from one dense array.
    std::vector<IndexedTree> ball_trees_;
    BallForest balls_;
};

} // namespace ftoracle
