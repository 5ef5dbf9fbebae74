#include "ftoracle/generators.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace ftoracle {

namespace {

std::uint64_t next(std::uint64_t& state) {
    // splitmix64
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t pair_key(VertexId a, VertexId b) {
    if (a > b) {
        std::swap(a, b);
    }
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

} // namespace

std::uint64_t uniform_below(std::uint64_t& state, std::uint64_t bound) {
    if (bound == 0) {
        throw InputError("empty range");
    }
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = next(state);
    } while (x >= limit);
    return x % bound;
}

Graph random_connected_graph(std::size_t n, std::size_t extra_edges, std::uint32_t max_weight, std::uint64_t seed) {
    if (n == 0) {
        throw InputError("graph needs at least one vertex");
    }
    if (max_weight == 0) {
        throw InputError("max weight must be positive");
    }
    const std::uint64_t possible = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (n - 1 + extra_edges > possible) {
        throw InputError("too many edges requested for " + std::to_string(n) + " vertices");
    }
    std::uint64_t state = seed;
    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
        std::swap(order[i - 1], order[uniform_below(state, i)]);
    }
    auto weight = [&] { return static_cast<double>(1 + uniform_below(state, max_weight)); };

    std::vector<Edge> edges;
    edges.reserve(n - 1 + extra_edges);
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t i = 1; i < n; ++i) {
        VertexId a = order[i];
        VertexId b = order[uniform_below(state, i)];
        seen.insert(pair_key(a, b));
        edges.push_back({a, b, weight()});
    }
    while (edges.size() < n - 1 + extra_edges) {
        auto a = static_cast<VertexId>(uniform_below(state, n));
        auto b = static_cast<VertexId>(uniform_below(state, n));
        if (a == b || !seen.insert(pair_key(a, b)).second) {
            continue;
        }
        edges.push_back({a, b, weight()});
    }
    return Graph(n, std::move(edges));
}

Graph grid_graph(std::size_t rows, std::size_t cols) {
    std::vector<Edge> edges;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            auto v = static_cast<VertexId>(r * cols + c);
            if (c + 1 < cols) {
                edges.push_back({v, v + 1, 1.0});
            }
            if (r + 1 < rows) {
                edges.push_back({v, static_cast<VertexId>(v + cols), 1.0});
            }
        }
    }
    return Graph(rows * cols, std::move(edges));
}

Graph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1), 1.0});
    }
    return Graph(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
    if (n < 3) {
        throw InputError("a cycle needs at least three vertices");
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n), 1.0});
    }
    return Graph(n, std::move(edges));
}

Graph star_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < n; ++i) {
        edges.push_back({0, static_cast<VertexId>(i), 1.0});
    }
    return Graph(n, std::move(edges));
}

std::vector<VertexId> sample_sources(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k > n) {
        throw InputError("cannot pick " + std::to_string(k) + " sources from " + std::to_string(n) + " vertices");
    }
    std::uint64_t state = seed ^ 0x5eed5eed5eed5eedULL;
    std::vector<VertexId> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        std::swap(pool[i], pool[i + uniform_below(state, n - i)]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

} // namespace ftoracle
