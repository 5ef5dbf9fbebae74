#include "ftoracle/audit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <json.hpp>

#include "ftoracle/generators.hpp"

namespace ftoracle {

std::string AuditReport::to_json() const {
    nlohmann::ordered_json j;
    j["oracle"] = oracle;
    j["bound"] = bound;
    j["queries"] = queries;
    j["finite"] = finite;
    j["lower_violations"] = lower_violations;
    j["upper_violations"] = upper_violations;
    j["max_stretch"] = max_stretch;
    j["case_counts"] = case_counts;
    j["case_max_stretch"] = case_max_stretch;
    j["case_bound_violations"] = case_bound_violations;
    j["impossible_cases"] = impossible_cases;
    j["leg_bound_violations"] = leg_bound_violations;
    j["fast_path_checked"] = fast_path_checked;
    j["fast_path_mismatches"] = fast_path_mismatches;
    j["paths_checked"] = paths_checked;
    j["path_failures"] = path_failures;
    j["max_lca_queries"] = max_lca_queries;
    j["max_table_reads"] = max_table_reads;
    j["ok"] = ok();
    if (!first_failure.empty()) {
        j["first_failure"] = first_failure;
    }
    return j.dump();
}

double s5_case_bound(int case_id) {
    switch (case_id) {
        case 2:
        case 4:
            return 3.0;
        case 3:
            return 5.0;
        default:
            return 0.0;
    }
}

double s13_case_bound(int case_id) {
    switch (case_id) {
        case 1:
        case 2:
            return 7.0;
        case 3:
        case 6:
            return 11.0;
        case 4:
        case 7:
        case 8:
            return 13.0;
        default:
            return 0.0;
    }
}

namespace {

// What one oracle query produced, in oracle-neutral form.
struct Probe {
    Distance estimate = kUnreachable;
    QueryCounters counters;
    bool fault_on_source_path = false;
    int case_id = 0;
    // Set when the leg bounds are violated.
    std::string leg_bound_failure;
};

struct Subject {
    const Graph* g;
    std::span<const VertexId> sources;
    double bound;
    std::function<double(int)> case_bound;
    std::function<Probe(VertexId, VertexId, EdgeId)> probe;
    std::function<Distance(VertexId, VertexId, VertexId, VertexId)> probe_pair;
    std::function<std::vector<PathDescriptor>(VertexId, VertexId, EdgeId)> path;
    std::function<const ShortestPathTree*(VertexId)> stored_tree;
};

std::string triple(VertexId s, VertexId v, EdgeId f, const Graph& g) {
    std::string out = "s=" + std::to_string(s) + " v=" + std::to_string(v);
    if (f == kNoEdge) {
        return out + " f=none";
    }
    const Edge& e = g.edge(f);
    return out + " f=(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

bool leq(double a, double b, double tolerance) { return a <= b + tolerance * std::max(1.0, std::abs(b)); }

class Auditor {
  public:
    Auditor(const Subject& subject, const ExactReplacementTable& exact, const AuditOptions& options, AuditReport& r)
        : s_(subject), exact_(exact), opt_(options), r_(r), paths_(*subject.g, subject.stored_tree) {
        const Graph& g = *s_.g;
        // A vertex pair that is not an edge, for the f not in E path.
        for (VertexId a = 0; a < g.num_vertices() && non_edge_.first == kNoVertex; ++a) {
            for (VertexId b = a + 1; b < g.num_vertices(); ++b) {
                if (!g.find_edge(a, b)) {
                    non_edge_ = {a, b};
                    break;
                }
            }
        }
    }

    void run() {
        const Graph& g = *s_.g;
        if (opt_.exhaustive) {
            for (VertexId s : s_.sources) {
                for (VertexId v = 0; v < g.num_vertices(); ++v) {
                    check_fault_free(s, v);
                    for (EdgeId f = 0; f < g.num_edges(); ++f) {
                        check(s, v, f);
                    }
                }
            }
            return;
        }
        std::uint64_t state = opt_.seed;
        for (std::size_t i = 0; i < opt_.samples; ++i) {
            const VertexId s = s_.sources[uniform_below(state, s_.sources.size())];
            const auto v = static_cast<VertexId>(uniform_below(state, g.num_vertices()));
            EdgeId f = kNoEdge;
            const ShortestPathTree& ts = exact_.tree(s);
            if (uniform_below(state, 2) == 0 && ts.contains(v) && v != s) {
                // An edge of the canonical s..v path.
                VertexId c = v;
                for (std::uint64_t k = uniform_below(state, ts.hops(v)); k > 0; --k) {
                    c = ts.parent(c);
                }
                f = ts.parent_edge(c);
            } else if (g.num_edges() > 0) {
                f = static_cast<EdgeId>(uniform_below(state, g.num_edges()));
            }
            check_fault_free(s, v);
            if (f != kNoEdge) {
                check(s, v, f);
            }
        }
    }

  private:
    void fail(std::uint64_t& counter, const std::string& what) {
        ++counter;
        if (r_.first_failure.empty()) {
            r_.first_failure = what;
        }
    }

    void check_fault_free(VertexId s, VertexId v) {
        const Graph& g = *s_.g;
        const Distance base = exact_.base(s, v);
        r_.fast_path_checked += 2;
        if (s_.probe(s, v, kNoEdge).estimate != base) {
            fail(r_.fast_path_mismatches, "fault-free answer differs from ||sv|| at " + triple(s, v, kNoEdge, g));
        }
        if (non_edge_.first != kNoVertex && s_.probe_pair(s, v, non_edge_.first, non_edge_.second) != base) {
            fail(r_.fast_path_mismatches, "non-edge fault changes the answer at " + triple(s, v, kNoEdge, g));
        }
        if (opt_.check_paths && is_reachable(base)) {
            check_path(s, v, kNoEdge, base);
        }
    }

    void check(VertexId s, VertexId v, EdgeId f) {
        const Graph& g = *s_.g;
        const Probe p = s_.probe(s, v, f);
        ++r_.queries;
        r_.max_lca_queries = std::max(r_.max_lca_queries, p.counters.lca_queries);
        r_.max_table_reads = std::max(r_.max_table_reads, p.counters.table_reads);

        // Path membership by walking parent links, independent of the LCA test.
        const ShortestPathTree& ts = exact_.tree(s);
        bool on_path = false;
        if (ts.contains(v)) {
            for (VertexId c = v; c != s && !on_path; c = ts.parent(c)) {
                on_path = ts.parent_edge(c) == f;
            }
        }
        if (on_path != p.fault_on_source_path) {
            fail(r_.fast_path_mismatches, "edge test disagrees with the tree walk at " + triple(s, v, f, g));
        }
        if (!on_path) {
            ++r_.fast_path_checked;
            if (p.estimate != exact_.base(s, v)) {
                fail(r_.fast_path_mismatches, "off-path fault changes the answer at " + triple(s, v, f, g));
            }
        }

        const Distance exact = exact_.lookup(s, v, f);
        ++r_.case_counts[p.case_id];
        if (!p.leg_bound_failure.empty()) {
            fail(r_.leg_bound_violations, p.leg_bound_failure + " at " + triple(s, v, f, g));
        }
        if (p.case_id != 0 && s_.case_bound(p.case_id) == 0.0) {
            fail(r_.impossible_cases, "case " + std::to_string(p.case_id) + " occurred at " + triple(s, v, f, g));
        }
        if (!is_reachable(exact)) {
            return;
        }
        ++r_.finite;
        if (!is_reachable(p.estimate)) {
            fail(r_.upper_violations, "unreachable estimate for finite exact at " + triple(s, v, f, g));
            return;
        }
        if (!leq(exact, p.estimate, opt_.tolerance)) {
            fail(r_.lower_violations, "estimate " + std::to_string(p.estimate) + " below exact " +
                                          std::to_string(exact) + " at " + triple(s, v, f, g));
        }
        const double stretch = exact > 0 ? p.estimate / exact : 1.0;
        r_.max_stretch = std::max(r_.max_stretch, stretch);
        r_.case_max_stretch[p.case_id] = std::max(r_.case_max_stretch[p.case_id], stretch);
        if (!leq(p.estimate, s_.bound * exact, opt_.tolerance)) {
            fail(r_.upper_violations, "stretch " + std::to_string(stretch) + " at " + triple(s, v, f, g));
        }
        const double cb = p.case_id == 0 ? 1.0 : s_.case_bound(p.case_id);
        if (cb > 0 && !leq(p.estimate, cb * exact, opt_.tolerance)) {
            fail(r_.case_bound_violations, "case " + std::to_string(p.case_id) + " stretch " +
                                               std::to_string(stretch) + " at " + triple(s, v, f, g));
        }
        if (opt_.check_paths) {
            check_path(s, v, f, p.estimate);
        }
    }

    void check_path(VertexId s, VertexId v, EdgeId f, Distance estimate) {
        ++r_.paths_checked;
        try {
            const auto legs = s_.path(s, v, f);
            const auto walk = expand_walk(legs, *s_.g, paths_);
            const Distance len = walk_length(walk, *s_.g, f);
            if (walk.empty() || walk.front() != s || walk.back() != v) {
                fail(r_.path_failures, "walk endpoints wrong at " + triple(s, v, f, *s_.g));
            } else if (!leq(len, estimate, opt_.tolerance) || !leq(estimate, len, opt_.tolerance)) {
                fail(r_.path_failures, "walk length " + std::to_string(len) + " differs from estimate " +
                                           std::to_string(estimate) + " at " + triple(s, v, f, *s_.g));
            }
        } catch (const std::runtime_error& e) {
            fail(r_.path_failures, std::string(e.what()) + " at " + triple(s, v, f, *s_.g));
        }
    }

    const Subject& s_;
    const ExactReplacementTable& exact_;
    const AuditOptions& opt_;
    AuditReport& r_;
    CanonicalPaths paths_;
    std::pair<VertexId, VertexId> non_edge_{kNoVertex, kNoVertex};
};

AuditReport run_audit(const Subject& subject, const ExactReplacementTable& exact, const AuditOptions& options,
                      const std::string& name) {
    AuditReport r;
    r.oracle = name;
    r.bound = subject.bound;
    Auditor(subject, exact, options, r).run();
    return r;
}

} // namespace

AuditReport audit(const OracleS5& o, const ExactReplacementTable& exact, const AuditOptions& options) {
    Subject s{&o.graph(),
              o.sources(),
              5.0,
              s5_case_bound,
              [&](VertexId src, VertexId v, EdgeId f) {
                  S5Trace tr;
                  Probe p;
                  p.estimate = o.query(src, v, f, &tr);
                  p.counters = tr.counters;
                  p.fault_on_source_path = tr.fault_on_source_path;
                  p.case_id = tr.case_id;
                  return p;
              },
              [&](VertexId src, VertexId v, VertexId a, VertexId b) { return o.query(src, v, a, b); },
              [&](VertexId src, VertexId v, EdgeId f) { return o.query_path(src, v, f); },
              [&](VertexId root) { return o.stored_tree(root); }};
    return run_audit(s, exact, options, "s5");
}

AuditReport audit(const OracleS13& o, const ExactReplacementTable& exact, const AuditOptions& options) {
    const double tol = options.tolerance;
    Subject s{&o.graph(),
              o.sources(),
              13.0,
              s13_case_bound,
              [&o, tol](VertexId src, VertexId v, EdgeId f) {
                  S13Trace tr;
                  Probe p;
                  p.estimate = o.query(src, v, f, &tr);
                  p.counters = tr.counters;
                  p.fault_on_source_path = tr.fault_on_source_path;
                  p.case_id = tr.case_id;
                  if (tr.fault_on_source_path) {
                      const Distance sv = o.st().source_tree(src).tree().dist(v);
                      if (!leq(tr.base_vx, sv, tol) || !leq(tr.base_xy, 2 * sv, tol) || !leq(tr.base_ys, 4 * sv, tol)) {
                          p.leg_bound_failure = "leg lengths exceed 1/2/4 times ||sv||";
                      }
                  }
                  return p;
              },
              [&](VertexId src, VertexId v, VertexId a, VertexId b) { return o.query(src, v, a, b); },
              [&](VertexId src, VertexId v, EdgeId f) { return o.query_path(src, v, f); },
              [&](VertexId root) { return o.stored_tree(root); }};
    return run_audit(s, exact, options, "s13");
}

AuditReport audit(const OracleS5& o, const AuditOptions& options) {
    return audit(o, ExactReplacementTable(o.graph(), o.sources()), options);
}

AuditReport audit(const OracleS13& o, const AuditOptions& options) {
    return audit(o, ExactReplacementTable(o.graph(), o.sources()), options);
}

} // namespace ftoracle
