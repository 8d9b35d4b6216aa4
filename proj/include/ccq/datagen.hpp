#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccq/clustering.hpp"
#include "ccq/graph.hpp"
#include "ccq/rng.hpp"

namespace ccq {

enum class Family { kN, kS, kD, kSkew, kSqrtN, kExplicit };

struct FamilySpec {
    Family family = Family::kS;
    Vertex n = 0;                // used by skew / sqrtn
    std::vector<Vertex> sizes;   // used by explicit
    std::uint64_t seed = 0;
};

struct PlantedInstance {
    SignedGraph graph;
    Clustering truth;
};

enum class NoiseModel { kNone, kI, kII, kIII };

struct NoiseSpec {
    NoiseModel model = NoiseModel::kNone;
    std::int64_t flips = 100;  // the L budget
    double l1 = 0.01;          // inter-cluster flip fraction, model III
    double l2 = 0.1;           // large-instance budget fraction: L = floor(l2 * C(n,2))
    std::uint64_t seed = 0;
};

inline Family parse_family(const std::string& s) {
    if (s == "N") return Family::kN;
    if (s == "S") return Family::kS;
    if (s == "D") return Family::kD;
    if (s == "skew") return Family::kSkew;
    if (s == "sqrtn") return Family::kSqrtN;
    if (s == "explicit") return Family::kExplicit;
    throw std::invalid_argument("unknown family: " + s);
}

inline std::string family_name(Family f) {
    switch (f) {
        case Family::kN: return "N";
        case Family::kS: return "S";
        case Family::kD: return "D";
        case Family::kSkew: return "skew";
        case Family::kSqrtN: return "sqrtn";
        case Family::kExplicit: return "explicit";
    }
    return "?";
}

inline NoiseModel parse_noise_model(const std::string& s) {
    if (s == "none") return NoiseModel::kNone;
    if (s == "I") return NoiseModel::kI;
    if (s == "II") return NoiseModel::kII;
    if (s == "III") return NoiseModel::kIII;
    throw std::invalid_argument("unknown noise model: " + s);
}

inline std::string noise_model_name(NoiseModel m) {
    switch (m) {
        case NoiseModel::kNone: return "none";
        case NoiseModel::kI: return "I";
        case NoiseModel::kII: return "II";
        case NoiseModel::kIII: return "III";
    }
    return "?";
}

/// Default flip budget: the small synthetic families use L = 100, the large
/// ones L = floor(l2 * C(n,2)).
inline std::int64_t default_flip_budget(Family f, Vertex n, double l2 = 0.1) {
    if (f == Family::kSkew || f == Family::kSqrtN) {
        std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
        return static_cast<std::int64_t>(std::floor(l2 * static_cast<double>(pairs)));
    }
    return 100;
}

namespace detail {

inline std::vector<Vertex> family_sizes(const FamilySpec& spec) {
    Rng rng(spec.seed);
    std::vector<Vertex> sizes;
    switch (spec.family) {
        case Family::kN:
            // 10 cliques, sizes i.i.d. Normal(8, 2) rounded to the nearest
            // integer; draws below 2 are resampled so each clique is a clique.
            for (int i = 0; i < 10; ++i) {
                Vertex s;
                do {
                    s = static_cast<Vertex>(std::llround(rng.next_normal(8.0, 2.0)));
                } while (s < 2);
                sizes.push_back(s);
            }
            break;
        case Family::kS:
            sizes = {5, 5, 5, 5, 5, 15, 15, 15, 15, 30};
            break;
        case Family::kD: {
            // 3 cliques totalling 100; proportions drawn from Dirichlet(3,1,1),
            // apportioned by largest remainder with a minimum size of 1.
            double a = rng.next_gamma(3.0);
            double b = rng.next_gamma(1.0);
            double c = rng.next_gamma(1.0);
            double total = a + b + c;
            double props[3] = {a / total, b / total, c / total};
            Vertex floors[3];
            double rema[3];
            Vertex assigned = 0;
            for (int i = 0; i < 3; ++i) {
                double exact = props[i] * 100.0;
                floors[i] = static_cast<Vertex>(std::floor(exact));
                rema[i] = exact - std::floor(exact);
                assigned += floors[i];
            }
            int order[3] = {0, 1, 2};
            std::sort(order, order + 3, [&](int x, int y) {
                return rema[x] != rema[y] ? rema[x] > rema[y] : x < y;
            });
            for (int i = 0; assigned < 100; ++i, ++assigned) ++floors[order[i % 3]];
            for (int i = 0; i < 3; ++i) sizes.push_back(floors[i]);
            for (int i = 0; i < 3; ++i) {
                if (sizes[i] == 0) {
                    ++sizes[i];
                    --sizes[static_cast<std::size_t>(
                        std::max_element(sizes.begin(), sizes.end()) - sizes.begin())];
                }
            }
            break;
        }
        case Family::kSkew: {
            // Few large clusters, a band of medium ones, then a tail of pairs
            // and a final singleton.
            if (spec.n < 4) throw std::invalid_argument("skew family needs n >= 4");
            double lg = std::log2(static_cast<double>(spec.n));
            Vertex big = static_cast<Vertex>(std::floor(static_cast<double>(spec.n) / lg));
            Vertex mid = static_cast<Vertex>(std::floor(std::sqrt(static_cast<double>(spec.n))));
            Vertex left = spec.n;
            for (int i = 0; i < static_cast<int>(std::floor(lg)) && left >= big; ++i) {
                sizes.push_back(big);
                left -= big;
            }
            for (int i = 0; i < mid && left >= mid; ++i) {
                sizes.push_back(mid);
                left -= mid;
            }
            while (left >= 2) {
                sizes.push_back(2);
                left -= 2;
            }
            if (left == 1) sizes.push_back(1);
            break;
        }
        case Family::kSqrtN: {
            if (spec.n < 1) throw std::invalid_argument("sqrtn family needs n >= 1");
            Vertex s = static_cast<Vertex>(std::floor(std::sqrt(static_cast<double>(spec.n))));
            Vertex rem = spec.n - s * s;
            for (Vertex i = 0; i < s; ++i) sizes.push_back(s + (i < rem ? 1 : 0));
            // distribute any leftover below s one vertex at a time
            Vertex placed = 0;
            for (Vertex x : sizes) placed += x;
            for (Vertex i = 0; placed < spec.n; ++i, ++placed) ++sizes[i % sizes.size()];
            break;
        }
        case Family::kExplicit:
            sizes = spec.sizes;
            break;
    }
    for (Vertex s : sizes)
        if (s <= 0) throw std::invalid_argument("cluster sizes must be positive");
    return sizes;
}

/// Floyd's algorithm: `count` distinct values from [0, universe).
inline std::vector<std::int64_t> sample_distinct(std::int64_t universe, std::int64_t count,
                                                 Rng& rng) {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<std::int64_t> sorted;  // kept sorted for membership tests
    for (std::int64_t j = universe - count; j < universe; ++j) {
        std::int64_t t = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(j + 1)));
        auto it = std::lower_bound(sorted.begin(), sorted.end(), t);
        if (it != sorted.end() && *it == t) {
            out.push_back(j);
            sorted.insert(std::lower_bound(sorted.begin(), sorted.end(), j), j);
        } else {
            out.push_back(t);
            sorted.insert(it, t);
        }
    }
    return out;
}

/// Pair with index `idx` in the ascending (u, v) enumeration of the pairs of
/// `members`.
inline VertexPair decode_pair(const std::vector<Vertex>& members, std::int64_t idx) {
    std::int64_t m = static_cast<std::int64_t>(members.size());
    std::int64_t row = 0;
    std::int64_t rowlen = m - 1;
    while (idx >= rowlen) {
        idx -= rowlen;
        ++row;
        --rowlen;
    }
    return {members[static_cast<std::size_t>(row)],
            members[static_cast<std::size_t>(row + 1 + idx)]};
}

}  // namespace detail

/**
 * Noiseless planted instance: clusters of consecutive vertex ids, all
 * intra-cluster edges +, all inter-cluster edges -. Deterministic given the
 * spec's seed.
 */
inline PlantedInstance generate_planted(const FamilySpec& spec) {
    std::vector<Vertex> sizes = detail::family_sizes(spec);
    Vertex n = 0;
    for (Vertex s : sizes) n += s;
    std::vector<VertexPair> plus;
    std::vector<std::int32_t> assign(static_cast<std::size_t>(n));
    Vertex start = 0;
    std::int32_t id = 0;
    for (Vertex s : sizes) {
        for (Vertex u = start; u < start + s; ++u) {
            assign[u] = id;
            for (Vertex v = u + 1; v < start + s; ++v) plus.emplace_back(u, v);
        }
        start += s;
        ++id;
    }
    return PlantedInstance{SignedGraph(n, plus), Clustering(std::move(assign))};
}

/**
 * Label-flip noise.
 *   I   flips min(L, C(n,2)) distinct pairs chosen uniformly among all pairs;
 *   II  flips min(floor(L/k), |C_i|-1) distinct pairs inside each cluster C_i
 *       and never touches inter-cluster edges;
 *   III applies II and additionally flips ceil(l1*|C_i||C_j|) distinct pairs
 *       between every cluster pair.
 * Sampling is without replacement and deterministic given the seed. Budgets
 * exceeding a stratum's pair count are clamped with a warning on stderr.
 */
inline SignedGraph apply_noise(const SignedGraph& g, const Clustering& truth,
                               const NoiseSpec& spec) {
    if (truth.num_vertices() != g.num_vertices())
        throw std::invalid_argument("truth clustering does not match graph");
    if (spec.flips < 0) throw std::invalid_argument("flip budget must be non-negative");
    if (spec.model == NoiseModel::kNone) return g;
    const Vertex n = g.num_vertices();
    Rng rng(spec.seed);
    std::vector<VertexPair> flips;

    auto clamped = [](std::int64_t want, std::int64_t avail, const char* where) {
        if (want > avail) {
            std::cerr << "ccq: warning: flip budget " << want << " clamped to " << avail << " ("
                      << where << ")\n";
            return avail;
        }
        return want;
    };

    if (spec.model == NoiseModel::kI) {
        std::vector<Vertex> everyone(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v) everyone[v] = v;
        std::int64_t pairs = static_cast<std::int64_t>(n) * (n - 1) / 2;
        std::int64_t want = clamped(spec.flips, pairs, "model I");
        for (std::int64_t idx : detail::sample_distinct(pairs, want, rng))
            flips.push_back(detail::decode_pair(everyone, idx));
    } else {
        std::vector<std::vector<Vertex>> clusters = truth.clusters();
        std::int64_t k = static_cast<std::int64_t>(clusters.size());
        for (const auto& members : clusters) {
            std::int64_t size = static_cast<std::int64_t>(members.size());
            std::int64_t want = std::min(spec.flips / k, size - 1);
            want = clamped(want, size * (size - 1) / 2, "model II clique");
            if (want <= 0) continue;
            for (std::int64_t idx : detail::sample_distinct(size * (size - 1) / 2, want, rng))
                flips.push_back(detail::decode_pair(members, idx));
        }
        if (spec.model == NoiseModel::kIII) {
            for (std::size_t i = 0; i < clusters.size(); ++i) {
                for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                    std::int64_t si = static_cast<std::int64_t>(clusters[i].size());
                    std::int64_t sj = static_cast<std::int64_t>(clusters[j].size());
                    std::int64_t want = static_cast<std::int64_t>(
                        std::ceil(spec.l1 * static_cast<double>(si * sj)));
                    want = clamped(want, si * sj, "model III cluster pair");
                    if (want <= 0) continue;
                    for (std::int64_t idx : detail::sample_distinct(si * sj, want, rng)) {
                        Vertex u = clusters[i][static_cast<std::size_t>(idx / sj)];
                        Vertex v = clusters[j][static_cast<std::size_t>(idx % sj)];
                        flips.emplace_back(u, v);
                    }
                }
            }
        }
    }
    return g.with_toggled(flips);
}

struct WeightedEdge {
    Vertex u, v;
    double weight;
};

/**
 * Rounds a weighted graph to signs: + iff weight >= 1/2. Pairs not listed
 * default to weight 0, hence -.
 */
inline SignedGraph threshold_weighted(const std::vector<WeightedEdge>& edges, Vertex n) {
    std::vector<VertexPair> plus;
    std::vector<std::vector<std::pair<Vertex, double>>> seen(static_cast<std::size_t>(n));
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw std::invalid_argument("weighted edge vertex out of range");
        if (e.u == e.v) throw std::invalid_argument("weighted edge self-loop");
        if (e.weight < 0.0 || e.weight > 1.0)
            throw std::invalid_argument("edge weight outside [0, 1]");
        Vertex a = std::min(e.u, e.v), b = std::max(e.u, e.v);
        for (const auto& [prev_b, prev_w] : seen[static_cast<std::size_t>(a)])
            if (prev_b == b && prev_w != e.weight)
                throw std::invalid_argument("duplicate pair with conflicting weights");
        seen[static_cast<std::size_t>(a)].emplace_back(b, e.weight);
        if (e.weight >= 0.5) plus.emplace_back(a, b);
    }
    return SignedGraph(n, plus);
}

}  // namespace ccq
