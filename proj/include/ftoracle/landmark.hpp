#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ftoracle/graph.hpp"

namespace ftoracle {

inline constexpr int kDefaultMaxAttempts = 64;

struct LandmarkSet {
    std::vector<VertexId> members;  // sorted
    double probability = 1.0;  // effective per-vertex sampling probability
    std::uint32_t hop_threshold = 0;
    std::uint64_t seed = 0;
    std::uint32_t attempts = 0;  // draws consumed, including the accepted one

    bool contains(VertexId v) const;
    // 2 n p, the accepted size cap.
    double size_cap(std::size_t n) const { return 2.0 * static_cast<double>(n) * probability; }
};

class LandmarkError : public ConstructionError {
  public:
    enum class Property { size, hitting };
    LandmarkError(Property failing, const std::string& what) : ConstructionError(what), failing_(failing) {}
    Property failing() const { return failing_; }

  private:
    Property failing_;
};

// floor(n^(num/den)) computed exactly in integers.
std::uint32_t floor_root_power(std::uint64_t n, unsigned num, unsigned den);

// min(1, 3 ln n / n^exponent).
double landmark_probability(std::size_t n, double exponent);

// True iff every pair whose canonical path has at least hop_threshold hops has
// a member on that path (endpoints included). Exhaustive over all pairs.
bool verify_hitting(const Graph& g, std::span<const VertexId> set, std::uint32_t hop_threshold);

// Independent Bernoulli(p) draws per vertex, repeated until the draw has at
// most 2np members and passes verify_hitting. Throws LandmarkError when
// max_attempts draws all fail.
LandmarkSet sample_landmarks(const Graph& g, double p, std::uint32_t hop_threshold, std::uint64_t seed,
                             int max_attempts = kDefaultMaxAttempts);

struct TwoLevelPolicy {
    // Overrides for the first-level probability and the subsampling
    // probability; defaults are 3 ln n / n^(1/3) and n^(-1/3).
    std::optional<double> first_probability;
    std::optional<double> sub_probability;
};

// First level at threshold floor(n^(1/3)); second level subsampled from the
// first at threshold floor(n^(2/3)). Both levels are verified and a failure of
// either repeats the whole draw. Guarantees second ⊆ first.
std::pair<LandmarkSet, LandmarkSet> two_level_sample(const Graph& g, std::uint64_t seed,
                                                     int max_attempts = kDefaultMaxAttempts,
                                                     const TwoLevelPolicy& policy = {});

} // namespace ftoracle
