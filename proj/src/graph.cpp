#include "ftoracle/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <tuple>

namespace ftoracle {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ >= kNoVertex) {
        throw InputError("too many vertices");
    }
    if (edges_.size() >= kNoEdge) {
        throw InputError("too many edges");
    }
    std::vector<std::size_t> degree(n_, 0);
    lookup_.reserve(edges_.size() * 2);
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        if (ed.u >= n_ || ed.v >= n_) {
            throw InputError("edge " + std::to_string(e) + " has an endpoint out of range");
        }
        if (ed.u == ed.v) {
            throw InputError("edge " + std::to_string(e) + " is a self-loop");
        }
        if (!(ed.w > 0.0) || !std::isfinite(ed.w)) {
            throw InputError("edge " + std::to_string(e) + " has a non-positive or non-finite weight");
        }
        if (!lookup_.emplace(pair_key(ed.u, ed.v), e).second) {
            throw InputError("duplicate edge {" + std::to_string(ed.u) + "," + std::to_string(ed.v) + "}");
        }
        ++degree[ed.u];
        ++degree[ed.v];
    }
    offsets_.assign(n_ + 1, 0);
    for (std::size_t v = 0; v < n_; ++v) {
        offsets_[v + 1] = offsets_[v] + degree[v];
    }
    adjacency_.resize(offsets_[n_]);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        adjacency_[fill[ed.u]++] = {ed.v, e};
        adjacency_[fill[ed.v]++] = {ed.u, e};
    }
}

std::uint64_t Graph::pair_key(VertexId u, VertexId v) {
    if (u > v) {
        std::swap(u, v);
    }
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v) const {
    auto it = lookup_.find(pair_key(u, v));
    if (it == lookup_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void Graph::require_vertex(VertexId v) const {
    if (v >= n_) {
        throw InputError("vertex " + std::to_string(v) + " out of range (n = " + std::to_string(n_) + ")");
    }
}

void Graph::require_edge(EdgeId e) const {
    if (e >= edges_.size()) {
        throw InputError("edge id " + std::to_string(e) + " out of range");
    }
}

std::uint64_t Graph::digest() const {
    // FNV-1a over n and the sorted (min, max, weight-bits) triples.
    std::vector<std::tuple<VertexId, VertexId, std::uint64_t>> norm;
    norm.reserve(edges_.size());
    for (const Edge& e : edges_) {
        norm.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v), std::bit_cast<std::uint64_t>(e.w));
    }
    std::sort(norm.begin(), norm.end());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    mix(n_);
    for (const auto& [a, b, w] : norm) {
        mix(a);
        mix(b);
        mix(w);
    }
    return h;
}

namespace {

bool is_comment_or_blank(std::string_view line) {
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string_view::npos) {
        return true;
    }
    return line[pos] == 'c' || line[pos] == '#';
}

[[noreturn]] void parse_fail(std::size_t lineno, const std::string& what, const std::string& line) {
    throw InputError("line " + std::to_string(lineno) + ": " + what + ": '" + line + "'");
}

Distance parse_weight(std::istringstream& ss, std::size_t lineno, const std::string& line) {
    Distance w;
    if (!(ss >> w)) {
        parse_fail(lineno, "missing or malformed weight", line);
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
        parse_fail(lineno, "weight must be positive and finite", line);
    }
    return w;
}

void expect_end(std::istringstream& ss, std::size_t lineno, const std::string& line) {
    std::string rest;
    if (ss >> rest) {
        parse_fail(lineno, "trailing tokens", line);
    }
}

Graph build_checked(std::size_t n, std::vector<Edge> edges, const std::vector<std::size_t>& lines) {
    try {
        return Graph(n, std::move(edges));
    } catch (const InputError& e) {
        // Re-throw with the originating line of the offending edge.
        std::string msg = e.what();
        auto pos = msg.find("edge ");
        if (pos == 0) {
            std::istringstream ss(msg.substr(5));
            std::size_t idx;
            if (ss >> idx && idx < lines.size()) {
                throw InputError("line " + std::to_string(lines[idx]) + ": " + msg);
            }
        }
        throw;
    }
}

} // namespace

Graph read_graph(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    bool dimacs = false;
    bool decided = false;
    std::size_t n = 0;
    std::size_t declared_m = 0;
    bool have_header = false;
    std::vector<Edge> edges;
    std::vector<std::size_t> edge_lines;
    std::unordered_map<std::uint64_t, std::size_t> seen;
    VertexId max_id = 0;
    bool any_edge = false;

    auto check_duplicate = [&](VertexId u, VertexId v) {
        std::uint64_t key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
        auto [it, inserted] = seen.emplace(key, lineno);
        if (!inserted) {
            parse_fail(lineno, "duplicate undirected edge (first seen on line " + std::to_string(it->second) + ")",
                       line);
        }
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (is_comment_or_blank(line)) {
            continue;
        }
        std::istringstream ss(line);
        if (!decided) {
            std::string first;
            ss >> first;
            dimacs = (first == "p");
            decided = true;
            ss.clear();
            ss.seekg(0);
        }
        if (dimacs) {
            std::string tag;
            ss >> tag;
            if (tag == "p") {
                if (have_header) {
                    parse_fail(lineno, "second problem line", line);
                }
                std::string kind;
                long long nn = -1, mm = -1;
                if (!(ss >> kind >> nn >> mm) || kind != "sp" || nn < 0 || mm < 0) {
                    parse_fail(lineno, "malformed header, expected 'p sp <n> <m>'", line);
                }
                expect_end(ss, lineno, line);
                n = static_cast<std::size_t>(nn);
                declared_m = static_cast<std::size_t>(mm);
                have_header = true;
            } else if (tag == "a") {
                if (!have_header) {
                    parse_fail(lineno, "edge before header", line);
                }
                long long u, v;
                if (!(ss >> u >> v)) {
                    parse_fail(lineno, "malformed edge, expected 'a <u> <v> <w>'", line);
                }
                if (u < 1 || v < 1 || static_cast<std::size_t>(u) > n || static_cast<std::size_t>(v) > n) {
                    parse_fail(lineno, "vertex id out of range 1.." + std::to_string(n), line);
                }
                Distance w = parse_weight(ss, lineno, line);
                expect_end(ss, lineno, line);
                auto a = static_cast<VertexId>(u - 1);
                auto b = static_cast<VertexId>(v - 1);
                if (a == b) {
                    parse_fail(lineno, "self-loop", line);
                }
                check_duplicate(a, b);
                edges.push_back({a, b, w});
                edge_lines.push_back(lineno);
            } else {
                parse_fail(lineno, "unknown line type '" + tag + "'", line);
            }
        } else {
            long long u, v;
            if (!(ss >> u >> v)) {
                parse_fail(lineno, "malformed edge, expected '<u> <v> <w>'", line);
            }
            if (u < 0 || v < 0 || u >= static_cast<long long>(kNoVertex) || v >= static_cast<long long>(kNoVertex)) {
                parse_fail(lineno, "vertex id out of range", line);
            }
            Distance w = parse_weight(ss, lineno, line);
            expect_end(ss, lineno, line);
            auto a = static_cast<VertexId>(u);
            auto b = static_cast<VertexId>(v);
            if (a == b) {
                parse_fail(lineno, "self-loop", line);
            }
            check_duplicate(a, b);
            edges.push_back({a, b, w});
            edge_lines.push_back(lineno);
            max_id = std::max({max_id, a, b});
            any_edge = true;
        }
    }
    if (dimacs) {
        if (!have_header) {
            throw InputError("missing 'p sp <n> <m>' header");
        }
        if (edges.size() != declared_m) {
            throw InputError("header declares " + std::to_string(declared_m) + " edges but " +
                             std::to_string(edges.size()) + " were read");
        }
    } else {
        n = any_edge ? static_cast<std::size_t>(max_id) + 1 : 0;
    }
    return build_checked(n, std::move(edges), edge_lines);
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open graph file '" + path + "'");
    }
    return read_graph(in);
}

void write_dimacs(std::ostream& out, const Graph& g) {
    out << "p sp " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    auto old_precision = out.precision(17);
    for (const Edge& e : g.edges()) {
        out << "a " << e.u + 1 << ' ' << e.v + 1 << ' ' << e.w << '\n';
    }
    out.precision(old_precision);
}

} // namespace ftoracle
