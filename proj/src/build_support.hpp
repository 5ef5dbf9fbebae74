#pragma once

// Helpers shared by the oracle builders and their (de)serializers.

#include <functional>
#include <span>
#include <vector>

#include "ftoracle/binary_io.hpp"
#include "ftoracle/graph.hpp"
#include "ftoracle/landmark.hpp"
#include "ftoracle/lca.hpp"
#include "ftoracle/path_descriptor.hpp"
#include "ftoracle/shortest_path_tree.hpp"

namespace ftoracle::detail {

// Row of replacement entries for one (anchor, target) pair: entry i - 1 holds
// the path avoiding the i-th edge from the anchor.
using RowLocator = std::function<ReplacementEntry*(VertexId target)>;

// For every target reachable in base (a full tree rooted at the anchor), runs
// one Dijkstra in G - e per tree edge e lying on some anchor..target path and
// fills the corresponding row slots.
void fill_replacement_rows(DijkstraEngine& engine, const ShortestPathTree& base, std::span<const VertexId> targets,
                           const RowLocator& row_of);

std::vector<VertexId> sorted_unique(std::vector<VertexId> v);
std::vector<VertexId> sorted_union(std::span<const VertexId> a, std::span<const VertexId> b);
// slot[v] = position of v in members, kNoVertex elsewhere.
std::vector<std::uint32_t> slot_map(std::size_t n, std::span<const VertexId> members);

// Nearest member under (distance, vertex id) order.
struct Nearest {
    std::vector<VertexId> vertex;
    std::vector<Distance> dist;

    explicit Nearest(std::size_t n) : vertex(n, kNoVertex), dist(n, kUnreachable) {}
    void offer(VertexId v, VertexId candidate, Distance d) {
        if (d < dist[v] || (d == dist[v] && is_reachable(d) && candidate < vertex[v])) {
            dist[v] = d;
            vertex[v] = candidate;
        }
    }
};

// The part of a full tree spanned by members, which must be closed under
// taking tree parents up to the root. Throws IntegrityError otherwise.
ShortestPathTree restrict_tree(const ShortestPathTree& full, std::span<const VertexId> members);
// Truncated tree over the union of the root paths of the given vertices.
ShortestPathTree path_union_tree(const ShortestPathTree& full, std::span<const VertexId> ends);

void write_vertices(BinaryWriter& w, std::span<const VertexId> v);
std::vector<VertexId> read_vertices(BinaryReader& r, std::size_t n);
void write_landmarks(BinaryWriter& w, const LandmarkSet& l);
LandmarkSet read_landmarks(BinaryReader& r, std::size_t n);
void write_tree(BinaryWriter& w, const ShortestPathTree& t);
ShortestPathTree read_tree(BinaryReader& r, const Graph& g);
void write_entries(BinaryWriter& w, std::span<const ReplacementEntry> e);
std::vector<ReplacementEntry> read_entries(BinaryReader& r, std::size_t n);
void write_offsets(BinaryWriter& w, std::span<const std::uint64_t> o);
std::vector<std::uint64_t> read_offsets(BinaryReader& r, std::size_t expected_count, std::size_t total);

} // namespace ftoracle::detail

namespace ftoracle::detail {

// Section framing: 4-byte tag, u64 payload length, payload.
template <typename Fill>
void write_section(BinaryWriter& w, const char (&tag)[5], Fill&& fill) {
    BinaryWriter body;
    fill(body);
    w.tag(tag);
    w.u64(body.bytes().size());
    w.raw(body.bytes());
}

// Reads the next section, which must carry the given tag.
BinaryReader read_section(BinaryReader& r, const char (&tag)[5]);

void write_vertex_array(BinaryWriter& w, std::span<const VertexId> v);  // kNoVertex allowed
std::vector<VertexId> read_vertex_array(BinaryReader& r, std::size_t n, std::size_t expected);
void write_distances(BinaryWriter& w, std::span<const Distance> d);
std::vector<Distance> read_distances(BinaryReader& r, std::size_t expected);

} // namespace ftoracle::detail
