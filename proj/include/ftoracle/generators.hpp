#pragma once

#include <cstdint>
#include <vector>

#include "ftoracle/graph.hpp"

namespace ftoracle {

// Uniform spanning tree over a random vertex order plus extra_edges distinct
// random non-tree edges, integer weights uniform in [1, max_weight].
// Deterministic in seed.
Graph random_connected_graph(std::size_t n, std::size_t extra_edges, std::uint32_t max_weight, std::uint64_t seed);

// rows x cols grid, unit weights, vertex r * cols + c.
Graph grid_graph(std::size_t rows, std::size_t cols);
// 0 - 1 - ... - (n-1), unit weights.
Graph path_graph(std::size_t n);
// Path plus the closing edge (n-1, 0), unit weights.
Graph cycle_graph(std::size_t n);
// Center 0 joined to 1..n-1, unit weights.
Graph star_graph(std::size_t n);

// k distinct vertices chosen uniformly from [0, n), sorted.
std::vector<VertexId> sample_sources(std::size_t n, std::size_t k, std::uint64_t seed);

// Uniform integer in [0, bound) from a 64-bit generator state; used wherever
// reproducible draws across standard libraries matter.
std::uint64_t uniform_below(std::uint64_t& state, std::uint64_t bound);

} // namespace ftoracle
