#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "ftoracle/oracle_s13.hpp"
#include "ftoracle/oracle_s5.hpp"
#include "ftoracle/replacement.hpp"

namespace ftoracle {

struct AuditOptions {
    // Every (s, v, f) with s in S, v in V, f in E; otherwise `samples` random
    // triples, half of them with f drawn from the canonical s..v path.
    bool exhaustive = true;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    // Expand every answered path and compare its length with the estimate.
    bool check_paths = false;
    // Relative slack for comparisons; 0 means exact, which integer weights
    // permit.
    double tolerance = 0.0;
};

struct AuditReport {
    std::string oracle;
    double bound = 0.0;
    std::uint64_t queries = 0;
    std::uint64_t finite = 0;  // queries with finite exact answer
    std::uint64_t lower_violations = 0;  // estimate < exact
    std::uint64_t upper_violations = 0;  // estimate > bound * exact
    double max_stretch = 1.0;
    // Indexed by case id; index 0 counts fault-free and off-path queries.
    std::array<std::uint64_t, 9> case_counts{};
    std::array<double, 9> case_max_stretch{};
    std::uint64_t case_bound_violations = 0;
    std::uint64_t impossible_cases = 0;  // case 1 for s5, case 5 for s13
    std::uint64_t leg_bound_violations = 0;  // leg length bounds, s13 only
    std::uint64_t fast_path_checked = 0;
    std::uint64_t fast_path_mismatches = 0;
    std::uint64_t paths_checked = 0;
    std::uint64_t path_failures = 0;
    std::uint32_t max_lca_queries = 0;
    std::uint32_t max_table_reads = 0;
    std::string first_failure;

    bool ok() const {
        return lower_violations == 0 && upper_violations == 0 && case_bound_violations == 0 &&
               impossible_cases == 0 && leg_bound_violations == 0 && fast_path_mismatches == 0 && path_failures == 0;
    }
    std::string to_json() const;
};

// Per-case stretch bounds; 0 marks a case that must never occur.
double s5_case_bound(int case_id);
double s13_case_bound(int case_id);

AuditReport audit(const OracleS5& o, const ExactReplacementTable& exact, const AuditOptions& options = {});
AuditReport audit(const OracleS13& o, const ExactReplacementTable& exact, const AuditOptions& options = {});
AuditReport audit(const OracleS5& o, const AuditOptions& options = {});
AuditReport audit(const OracleS13& o, const AuditOptions& options = {});

} // namespace ftoracle
