#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ftoracle/audit.hpp"
#include "ftoracle/bench.hpp"
#include "ftoracle/container.hpp"
#include "ftoracle/generators.hpp"
#include "ftoracle/replacement.hpp"

namespace ftoracle::cli {

namespace {

std::string format_distance(Distance d) {
    if (!is_reachable(d)) {
        return "UNREACHABLE";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, res.ptr);
}

std::vector<VertexId> read_sources(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    std::vector<VertexId> out;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream fields(line);
        std::string tok;
        while (fields >> tok) {
            VertexId v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size()) {
                throw InputError(path + ": line " + std::to_string(lineno) + ": bad vertex id '" + tok + "'");
            }
            if (!g.valid_vertex(v)) {
                throw InputError(path + ": line " + std::to_string(lineno) + ": vertex " + tok + " out of range");
            }
            out.push_back(v);
        }
    }
    if (out.empty()) {
        throw InputError(path + ": no sources listed");
    }
    return out;
}

struct BuildArgs {
    std::string graph;
    std::string sources_file;
    std::size_t sources_count = 0;
    std::uint64_t sources_seed = 0;
    std::string oracle = "s5";
    std::uint64_t seed = 0;
    std::string out;
    std::optional<double> landmark_p;
    std::optional<double> landmark_p2;
    int max_attempts = kDefaultMaxAttempts;
};

int cmd_build(const BuildArgs& a, std::ostream& out) {
    const Graph g = read_graph_file(a.graph);
    const std::vector<VertexId> sources =
        a.sources_file.empty() ? sample_sources(g.num_vertices(), a.sources_count, a.sources_seed)
                               : read_sources(a.sources_file, g);
    std::vector<std::uint8_t> bytes;
    std::string report;
    if (a.oracle == "s5") {
        S5Options opt{a.seed, a.max_attempts, a.landmark_p};
        if (a.landmark_p2) {
            throw InputError("--landmark-p2 applies to the s13 oracle only");
        }
        const OracleS5 o = OracleS5::build(g, sources, opt);
        bytes = serialize_container(o, a.seed);
        report = o.measure().to_json();
    } else {
        S13Options opt{a.seed, a.max_attempts, {a.landmark_p, a.landmark_p2}};
        const OracleS13 o = OracleS13::build(g, sources, opt);
        bytes = serialize_container(o, a.seed);
        report = o.measure().to_json();
    }
    write_file(a.out, bytes);
    out << report << "\n";
    return kOk;
}

struct QueryArgs {
    std::string container;
    std::string graph;
    VertexId s = 0;
    VertexId v = 0;
    std::vector<VertexId> fault;
    bool path = false;
};

template <typename Oracle>
void answer(const Oracle& o, const QueryArgs& a, std::ostream& out) {
    const Graph& g = o.graph();
    EdgeId f = kNoEdge;
    if (a.fault.size() == 2) {
        g.require_vertex(a.fault[0]);
        g.require_vertex(a.fault[1]);
        f = g.find_edge(a.fault[0], a.fault[1]).value_or(kNoEdge);
    }
    const Distance d = o.query(a.s, a.v, f);
    out << format_distance(d) << "\n";
    if (a.path && is_reachable(d)) {
        CanonicalPaths paths(g, [&o](VertexId r) { return o.stored_tree(r); });
        const auto legs = o.query_path(a.s, a.v, f);
        const auto walk = expand_walk(legs, g, paths);
        for (std::size_t i = 0; i < walk.size(); ++i) {
            out << (i ? " " : "") << walk[i];
        }
        out << "\n";
    }
}

int cmd_query(const QueryArgs& a, std::ostream& out) {
    if (!a.fault.empty() && a.fault.size() != 2) {
        throw InputError("a fault is given as two vertex ids");
    }
    const Graph g = read_graph_file(a.graph);
    const auto bytes = read_file(a.container);
    const LoadedOracle loaded = deserialize_container(bytes, g);
    std::visit([&](const auto& o) { answer(o, a, out); }, loaded.oracle);
    return kOk;
}

struct VerifyArgs {
    std::string container;
    std::string graph;
    bool exhaustive = false;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    bool paths = false;
    double tolerance = 0.0;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    const Graph g = read_graph_file(a.graph);
    const auto bytes = read_file(a.container);
    const LoadedOracle loaded = deserialize_container(bytes, g);
    AuditOptions opt;
    opt.exhaustive = a.exhaustive || a.samples == 0;
    opt.samples = a.samples;
    opt.seed = a.seed;
    opt.check_paths = a.paths;
    opt.tolerance = a.tolerance;
    const AuditReport r = std::visit([&](const auto& o) { return audit(o, opt); }, loaded.oracle);
    out << r.to_json() << "\n";
    if (!r.ok()) {
        err << "verification failed: " << r.first_failure << "\n";
        return kVerificationFailed;
    }
    return kOk;
}

struct BenchArgs {
    std::vector<std::size_t> sizes{100, 400, 1600};
    std::string oracle = "both";
    std::size_t seeds = 1;
    std::string out;
    std::size_t queries = 100000;
    std::size_t stretch_samples = 2000;
    std::uint32_t max_weight = 100;
};

// Largest estimate / exact over sampled queries, half of them with the fault
// on the canonical s..v path.
template <typename Oracle>
double sampled_stretch(const Oracle& o, std::size_t samples, std::uint64_t seed) {
    const Graph& g = o.graph();
    std::uint64_t state = seed;
    double worst = 1.0;
    const auto sources = o.sources();
    for (std::size_t i = 0; i < samples; ++i) {
        const VertexId s = sources[uniform_below(state, sources.size())];
        const auto v = static_cast<VertexId>(uniform_below(state, g.num_vertices()));
        const ShortestPathTree& ts = o.st().source_tree(s).tree();
        EdgeId f = static_cast<EdgeId>(uniform_below(state, g.num_edges()));
        if (uniform_below(state, 2) == 0 && v != s && ts.contains(v)) {
            VertexId c = v;
            for (std::uint64_t k = uniform_below(state, ts.hops(v)); k > 0; --k) {
                c = ts.parent(c);
            }
            f = ts.parent_edge(c);
        }
        const Distance exact = exact_replacement_distance(g, s, v, f);
        const Distance est = o.query(s, v, f);
        if (is_reachable(exact) && exact > 0) {
            worst = std::max(worst, is_reachable(est) ? est / exact : kUnreachable);
        }
    }
    return worst;
}

template <typename Oracle>
void bench_row(const Oracle& o, const std::vector<std::uint8_t>& bytes, double build_ms, std::size_t entries,
               const BenchArgs& a, std::uint64_t seed, std::ostream& csv) {
    const Graph& g = o.graph();
    const auto qs = random_queries(g, o.sources(), a.queries, seed + 17);
    const LatencyStats lat = measure_latency(o, qs);
    const double stretch = sampled_stretch(o, a.stretch_samples, seed + 29);
    csv << g.num_vertices() << "," << g.num_edges() << "," << o.sources().size() << ","
        << (std::is_same_v<Oracle, OracleS5> ? "s5" : "s13") << "," << build_ms << "," << entries << ","
        << bytes.size() << "," << lat.mean_ns << "," << lat.p99_ns << "," << stretch << "\n";
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    std::ofstream file;
    if (!a.out.empty()) {
        file.open(a.out);
        if (!file) {
            throw InputError("cannot open " + a.out + " for writing");
        }
    }
    std::ostream& csv = a.out.empty() ? out : file;
    csv << kBenchHeader << "\n";
    using clock = std::chrono::steady_clock;
    for (std::size_t n : a.sizes) {
        for (std::uint64_t seed = 0; seed < a.seeds; ++seed) {
            const Graph g = random_connected_graph(n, n, a.max_weight, seed);
            if (a.oracle != "s13") {
                const auto sources = sample_sources(n, static_cast<std::size_t>(std::ceil(std::sqrt(n))), seed);
                const auto t0 = clock::now();
                S5Options opt;
                opt.seed = seed;
                const OracleS5 o = OracleS5::build(g, sources, opt);
                const double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
                bench_row(o, serialize_container(o, seed), ms, o.measure().total_entries(), a, seed, csv);
            }
            if (a.oracle != "s5") {
                const auto sources = sample_sources(n, static_cast<std::size_t>(std::ceil(std::cbrt(n))), seed);
                const auto t0 = clock::now();
                S13Options opt;
                opt.seed = seed;
                const OracleS13 o = OracleS13::build(g, sources, opt);
                const double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
                bench_row(o, serialize_container(o, seed), ms, o.measure().total_entries(), a, seed, csv);
            }
        }
    }
    return kOk;
}

struct GenerateArgs {
    std::size_t n = 0;
    std::optional<std::size_t> extra;
    std::uint32_t max_weight = 100;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
    const Graph g = random_connected_graph(a.n, a.extra.value_or(a.n), a.max_weight, a.seed);
    if (a.out.empty()) {
        write_dimacs(out, g);
        return kOk;
    }
    std::ofstream file(a.out);
    if (!file) {
        throw InputError("cannot open " + a.out + " for writing");
    }
    write_dimacs(file, g);
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fault-tolerant sourcewise distance oracles for one edge failure", "ftso"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    BuildArgs build;
    auto* b = app.add_subcommand("build", "Build an oracle and write its container");
    b->add_option("graph", build.graph, "Graph file (DIMACS sp or TSV edge list)")->required();
    auto* src_file = b->add_option("--sources", build.sources_file, "File of 0-based source ids");
    auto* src_count = b->add_option("--sources-count", build.sources_count, "Pick this many random sources");
    src_file->excludes(src_count);
    b->add_option("--sources-seed", build.sources_seed, "Seed for --sources-count");
    b->add_option("--oracle", build.oracle, "s5 or s13")->check(CLI::IsMember({"s5", "s13"}));
    b->add_option("--seed", build.seed, "Landmark sampling seed");
    b->add_option("--out", build.out, "Container path")->required();
    b->add_option("--landmark-p", build.landmark_p, "Override the (first-level) landmark probability")
        ->check(CLI::Range(0.0, 1.0));
    b->add_option("--landmark-p2", build.landmark_p2, "Override the second-level subsampling probability (s13)")
        ->check(CLI::Range(0.0, 1.0));
    b->add_option("--max-attempts", build.max_attempts, "Landmark draws before giving up")
        ->check(CLI::PositiveNumber);

    QueryArgs query;
    auto* q = app.add_subcommand("query", "Answer one query from a container");
    q->add_option("container", query.container)->required();
    q->add_option("graph", query.graph)->required();
    q->add_option("s", query.s, "Source")->required();
    q->add_option("v", query.v, "Target")->required();
    q->add_option("fault", query.fault, "Failed edge as two vertex ids")->expected(0, 2);
    q->add_flag("--path", query.path, "Also print the walk");

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Compare a container against exact replacement distances");
    v->add_option("container", verify.container)->required();
    v->add_option("graph", verify.graph)->required();
    auto* ex = v->add_flag("--exhaustive", verify.exhaustive, "Every (s, v, f); the default");
    auto* sm = v->add_option("--samples", verify.samples, "Random triples instead");
    ex->excludes(sm);
    v->add_option("--seed", verify.seed, "Seed for --samples");
    v->add_flag("--paths", verify.paths, "Also expand and check every path");
    v->add_option("--tolerance", verify.tolerance, "Relative slack for non-integer weights")
        ->check(CLI::NonNegativeNumber);

    BenchArgs bench;
    auto* bn = app.add_subcommand("bench", "Build and time oracles on random graphs, CSV output");
    bn->add_option("--sizes", bench.sizes, "Vertex counts")->delimiter(',');
    bn->add_option("--oracle", bench.oracle, "s5, s13 or both")->check(CLI::IsMember({"s5", "s13", "both"}));
    bn->add_option("--seeds", bench.seeds, "Graphs per size")->check(CLI::PositiveNumber);
    bn->add_option("--out", bench.out, "CSV path (default stdout)");
    bn->add_option("--queries", bench.queries, "Timed queries per configuration")->check(CLI::PositiveNumber);
    bn->add_option("--stretch-samples", bench.stretch_samples, "Queries checked against exact distances");
    bn->add_option("--max-weight", bench.max_weight, "Edge weights are uniform in [1, w]")
        ->check(CLI::PositiveNumber);

    GenerateArgs gen;
    auto* gn = app.add_subcommand("generate", "Write a random connected graph in DIMACS format");
    gn->add_option("--n", gen.n, "Vertices")->required()->check(CLI::PositiveNumber);
    gn->add_option("--extra", gen.extra, "Edges beyond the spanning tree (default n)");
    gn->add_option("--max-weight", gen.max_weight)->check(CLI::PositiveNumber);
    gn->add_option("--seed", gen.seed);
    gn->add_option("--out", gen.out, "Output path (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*b) {
            if (build.sources_file.empty() && build.sources_count == 0) {
                throw InputError("give --sources FILE or --sources-count K");
            }
            return cmd_build(build, out);
        }
        if (*q) {
            return cmd_query(query, out);
        }
        if (*v) {
            return cmd_verify(verify, out, err);
        }
        if (*bn) {
            return cmd_bench(bench, out);
        }
        return cmd_generate(gen, out);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kDomainError;
    } catch (const ConstructionError& e) {
        err << "construction error: " << e.what() << "\n";
        return kConstructionError;
    } catch (const IntegrityError& e) {
        err << "integrity error: " << e.what() << "\n";
        return kConstructionError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kConstructionError;
    }
}

} // namespace ftoracle::cli
