#include "ftoracle/bench.hpp"

#include <algorithm>
#include <chrono>

#include "ftoracle/generators.hpp"

namespace ftoracle {

std::vector<Query> random_queries(const Graph& g, std::span<const VertexId> sources, std::size_t count,
                                  std::uint64_t seed) {
    if (sources.empty() || g.num_edges() == 0) {
        throw InputError("random queries need sources and edges");
    }
    std::uint64_t state = seed;
    std::vector<Query> out(count);
    for (Query& q : out) {
        q.s = sources[uniform_below(state, sources.size())];
        q.v = static_cast<VertexId>(uniform_below(state, g.num_vertices()));
        q.f = static_cast<EdgeId>(uniform_below(state, g.num_edges()));
    }
    return out;
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

template <typename Oracle>
LatencyStats measure(const Oracle& o, std::span<const Query> queries, int rounds) {
    if (queries.empty() || rounds < 1) {
        throw InputError("latency measurement needs queries and at least one round");
    }
    using clock = std::chrono::steady_clock;
    volatile double sink = 0;
    for (const Query& q : queries) {
        sink = sink + o.query(q.s, q.v, q.f);
    }
    std::vector<double> means, medians, p99s;
    std::vector<double> ns(queries.size());
    for (int r = 0; r < rounds; ++r) {
        for (std::size_t i = 0; i < queries.size(); ++i) {
            const auto t0 = clock::now();
            sink = sink + o.query(queries[i].s, queries[i].v, queries[i].f);
            const auto t1 = clock::now();
            ns[i] = std::chrono::duration<double, std::nano>(t1 - t0).count();
        }
        double total = 0;
        for (double x : ns) {
            total += x;
        }
        means.push_back(total / static_cast<double>(ns.size()));
        std::vector<double> sorted = ns;
        std::sort(sorted.begin(), sorted.end());
        medians.push_back(sorted[sorted.size() / 2]);
        p99s.push_back(sorted[std::min(sorted.size() - 1, sorted.size() * 99 / 100)]);
    }
    return {median(means), median(medians), median(p99s)};
}

} // namespace

LatencyStats measure_latency(const OracleS5& o, std::span<const Query> queries, int rounds) {
    return measure(o, queries, rounds);
}

LatencyStats measure_latency(const OracleS13& o, std::span<const Query> queries, int rounds) {
    return measure(o, queries, rounds);
}

} // namespace ftoracle
