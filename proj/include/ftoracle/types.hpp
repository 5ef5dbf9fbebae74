#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ftoracle {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Distance = double;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

// Distance after a failure that disconnects the pair. Compares greater than
// every finite distance and absorbs addition.
inline constexpr Distance kUnreachable = std::numeric_limits<Distance>::infinity();

inline bool is_reachable(Distance d) { return d != kUnreachable; }

// Malformed input: bad ids, parse failures, invalid weights.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A well-formed request outside the structure's domain (e.g. s not a source).
class DomainError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A build step could not produce a structure satisfying its invariants.
class ConstructionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Internal consistency check failed; always indicates a bug.
class IntegrityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace ftoracle
