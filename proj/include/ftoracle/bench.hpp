#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ftoracle/oracle_s13.hpp"
#include "ftoracle/oracle_s5.hpp"

namespace ftoracle {

struct Query {
    VertexId s;
    VertexId v;
    EdgeId f;
};

// Uniform s in sources, v in V, f in E, deterministic in seed.
std::vector<Query> random_queries(const Graph& g, std::span<const VertexId> sources, std::size_t count,
                                  std::uint64_t seed);

struct LatencyStats {
    double mean_ns = 0;
    double median_ns = 0;
    double p99_ns = 0;
};

// Times every query individually. One untimed warm-up pass, then `rounds`
// timed passes; reports the median over rounds of each statistic.
LatencyStats measure_latency(const OracleS5& o, std::span<const Query> queries, int rounds = 5);
LatencyStats measure_latency(const OracleS13& o, std::span<const Query> queries, int rounds = 5);

} // namespace ftoracle
