#include "ftoracle/landmark.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ftoracle/shortest_path_tree.hpp"

namespace ftoracle {

bool LandmarkSet::contains(VertexId v) const { return std::binary_search(members.begin(), members.end(), v); }

std::uint32_t floor_root_power(std::uint64_t n, unsigned num, unsigned den) {
    // Largest r with r^den <= n^num.
    auto pow_le = [](std::uint64_t base, unsigned e, long double limit) {
        long double acc = 1;
        for (unsigned i = 0; i < e; ++i) {
            acc *= static_cast<long double>(base);
        }
        return acc <= limit;
    };
    long double target = std::pow(static_cast<long double>(n), static_cast<long double>(num));
    auto guess = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<long double>(n),
                                                                static_cast<long double>(num) / den)));
    while (guess > 0 && !pow_le(guess, den, target)) {
        --guess;
    }
    while (pow_le(guess + 1, den, target)) {
        ++guess;
    }
    return static_cast<std::uint32_t>(guess);
}

double landmark_probability(std::size_t n, double exponent) {
    if (n < 2) {
        return 1.0;
    }
    double nn = static_cast<double>(n);
    return std::min(1.0, 3.0 * std::log(nn) / std::pow(nn, exponent));
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; fully specified by the
// engine, unlike std::uniform_real_distribution.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<VertexId> bernoulli_subset(std::span<const VertexId> pool, double p, std::mt19937_64& rng) {
    std::vector<VertexId> out;
    for (VertexId v : pool) {
        if (unit_draw(rng) < p) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<VertexId> all_vertices(const Graph& g) {
    std::vector<VertexId> all(g.num_vertices());
    for (VertexId v = 0; v < all.size(); ++v) {
        all[v] = v;
    }
    return all;
}

void check_probability(double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw InputError("landmark probability must lie in (0, 1]");
    }
}

} // namespace

bool verify_hitting(const Graph& g, std::span<const VertexId> set, std::uint32_t hop_threshold) {
    const std::size_t n = g.num_vertices();
    std::vector<char> member(n, 0);
    for (VertexId v : set) {
        g.require_vertex(v);
        member[v] = 1;
    }
    DijkstraEngine engine(g);
    std::vector<char> hit(n, 0);
    for (VertexId u = 0; u < n; ++u) {
        engine.run(u);
        for (VertexId v : engine.order()) {
            VertexId p = engine.parent(v);
            hit[v] = member[v] || (p != kNoVertex && hit[p]);
            if (!hit[v] && engine.hops(v) >= hop_threshold) {
                return false;
            }
        }
    }
    return true;
}

LandmarkSet sample_landmarks(const Graph& g, double p, std::uint32_t hop_threshold, std::uint64_t seed,
                             int max_attempts) {
    check_probability(p);
    if (max_attempts < 1) {
        throw InputError("max_attempts must be at least 1");
    }
    std::mt19937_64 rng(seed);
    const auto pool = all_vertices(g);
    LandmarkSet result;
    result.probability = p;
    result.hop_threshold = hop_threshold;
    result.seed = seed;
    LandmarkError::Property last = LandmarkError::Property::size;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        result.members = bernoulli_subset(pool, p, rng);
        result.attempts = static_cast<std::uint32_t>(attempt);
        if (static_cast<double>(result.members.size()) > result.size_cap(g.num_vertices())) {
            last = LandmarkError::Property::size;
            continue;
        }
        if (!verify_hitting(g, result.members, hop_threshold)) {
            last = LandmarkError::Property::hitting;
            continue;
        }
        return result;
    }
    throw LandmarkError(last, "landmark sampling failed after " + std::to_string(max_attempts) +
                                  " attempts (last failure: " +
                                  (last == LandmarkError::Property::size ? "size cap 2np" : "hitting property") +
                                  ", p = " + std::to_string(p) + ", hop threshold = " +
                                  std::to_string(hop_threshold) + ")");
}

std::pair<LandmarkSet, LandmarkSet> two_level_sample(const Graph& g, std::uint64_t seed, int max_attempts,
                                                     const TwoLevelPolicy& policy) {
    const std::size_t n = g.num_vertices();
    if (n < 2) {
        throw InputError("two-level landmark sampling needs at least two vertices");
    }
    if (max_attempts < 1) {
        throw InputError("max_attempts must be at least 1");
    }
    const double p1 = policy.first_probability.value_or(landmark_probability(n, 1.0 / 3.0));
    const double q = policy.sub_probability.value_or(std::min(1.0, std::pow(static_cast<double>(n), -1.0 / 3.0)));
    check_probability(p1);
    check_probability(q);

    LandmarkSet first;
    first.probability = p1;
    first.hop_threshold = floor_root_power(n, 1, 3);
    first.seed = seed;
    LandmarkSet second;
    second.probability = p1 * q;
    second.hop_threshold = floor_root_power(n, 2, 3);
    second.seed = seed;

    std::mt19937_64 rng(seed);
    const auto pool = all_vertices(g);
    LandmarkError::Property last = LandmarkError::Property::size;
    std::string level;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        first.members = bernoulli_subset(pool, p1, rng);
        second.members = bernoulli_subset(first.members, q, rng);
        first.attempts = second.attempts = static_cast<std::uint32_t>(attempt);
        bool ok = true;
        for (const LandmarkSet* set : {&first, &second}) {
            if (static_cast<double>(set->members.size()) > set->size_cap(n)) {
                last = LandmarkError::Property::size;
                ok = false;
            } else if (!verify_hitting(g, set->members, set->hop_threshold)) {
                last = LandmarkError::Property::hitting;
                ok = false;
            }
            if (!ok) {
                level = set == &first ? "first" : "second";
                break;
            }
        }
        if (ok) {
            return {std::move(first), std::move(second)};
        }
    }
    throw LandmarkError(last, "two-level landmark sampling failed after " + std::to_string(max_attempts) +
                                  " attempts (last failure: " + level + " level, " +
                                  (last == LandmarkError::Property::size ? "size cap 2np" : "hitting property") +
                                  ")");
}

} // namespace ftoracle
