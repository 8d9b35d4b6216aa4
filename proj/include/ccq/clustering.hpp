#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "ccq/graph.hpp"

namespace ccq {

/**
 * Partition of the vertices [0, n) into clusters, stored as one cluster id
 * per vertex. Ids are arbitrary non-negative integers; canonical() renumbers
 * them by first appearance so partition equality is structural equality of
 * the canonical assignment vectors.
 */
class Clustering {
public:
    Clustering() = default;

    explicit Clustering(std::vector<std::int32_t> assignment) : assignment_(std::move(assignment)) {
        for (std::int32_t c : assignment_)
            if (c < 0) throw std::invalid_argument("cluster ids must be non-negative");
    }

    static Clustering singletons(Vertex n) {
        std::vector<std::int32_t> a(static_cast<std::size_t>(n));
        for (Vertex v = 0; v < n; ++v) a[v] = v;
        return Clustering(std::move(a));
    }

    static Clustering one_cluster(Vertex n) {
        return Clustering(std::vector<std::int32_t>(static_cast<std::size_t>(n), 0));
    }

    static Clustering from_clusters(Vertex n, const std::vector<std::vector<Vertex>>& clusters) {
        std::vector<std::int32_t> a(static_cast<std::size_t>(n), -1);
        std::int32_t id = 0;
        for (const auto& cluster : clusters) {
            for (Vertex v : cluster) {
                if (v < 0 || v >= n) throw std::invalid_argument("cluster member out of range");
                if (a[v] != -1) throw std::invalid_argument("vertex in two clusters");
                a[v] = id;
            }
            ++id;
        }
        for (Vertex v = 0; v < n; ++v)
            if (a[v] == -1) throw std::invalid_argument("vertex missing from all clusters");
        return Clustering(std::move(a));
    }

    Vertex num_vertices() const { return static_cast<Vertex>(assignment_.size()); }

    std::int32_t cluster_of(Vertex v) const { return assignment_[static_cast<std::size_t>(v)]; }

    bool same_cluster(Vertex u, Vertex v) const {
        return assignment_[static_cast<std::size_t>(u)] == assignment_[static_cast<std::size_t>(v)];
    }

    /// Cluster ids relabeled by order of first appearance. Idempotent.
    Clustering canonical() const {
        std::map<std::int32_t, std::int32_t> seen;
        std::vector<std::int32_t> out(assignment_.size());
        for (std::size_t v = 0; v < assignment_.size(); ++v) {
            auto it = seen.emplace(assignment_[v], static_cast<std::int32_t>(seen.size())).first;
            out[v] = it->second;
        }
        return Clustering(std::move(out));
    }

    std::int32_t num_clusters() const {
        std::vector<std::int32_t> ids(assignment_);
        std::sort(ids.begin(), ids.end());
        return static_cast<std::int32_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
    }

    /// Clusters grouped as vertex lists, ordered by first appearance.
    std::vector<std::vector<Vertex>> clusters() const {
        Clustering c = canonical();
        std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(c.num_clusters()));
        for (Vertex v = 0; v < c.num_vertices(); ++v)
            out[static_cast<std::size_t>(c.cluster_of(v))].push_back(v);
        return out;
    }

    const std::vector<std::int32_t>& assignment() const { return assignment_; }

    friend bool operator==(const Clustering&, const Clustering&) = default;

private:
    std::vector<std::int32_t> assignment_;
};

inline bool same_partition(const Clustering& a, const Clustering& b) {
    return a.canonical() == b.canonical();
}

/**
 * Number of disagreements of clustering `c` on graph `g`: - edges inside a
 * cluster plus + edges across clusters.
 */
inline std::int64_t count_disagreements(const SignedGraph& g, const Clustering& c) {
    if (c.num_vertices() != g.num_vertices())
        throw std::invalid_argument("clustering/graph vertex-count mismatch");
    const Vertex n = g.num_vertices();
    if (n == 0) return 0;

    Clustering canon = c.canonical();
    std::vector<Bitset> members(static_cast<std::size_t>(canon.num_clusters()), Bitset(n));
    std::vector<std::int64_t> sizes(members.size(), 0);
    for (Vertex v = 0; v < n; ++v) {
        members[static_cast<std::size_t>(canon.cluster_of(v))].set(v);
        ++sizes[static_cast<std::size_t>(canon.cluster_of(v))];
    }

    std::int64_t intra_plus2 = 0;  // + edges inside clusters, counted twice
    for (Vertex v = 0; v < n; ++v) {
        const Bitset& row = g.plus_row(v);
        const Bitset& mask = members[static_cast<std::size_t>(canon.cluster_of(v))];
        for (std::size_t k = 0; k < row.num_words(); ++k)
            intra_plus2 += std::popcount(row.word(k) & mask.word(k));
    }
    std::int64_t intra_plus = intra_plus2 / 2;
    std::int64_t intra_pairs = 0;
    for (std::int64_t s : sizes) intra_pairs += s * (s - 1) / 2;

    std::int64_t intra_minus = intra_pairs - intra_plus;
    std::int64_t inter_plus = g.num_plus_edges() - intra_plus;
    return intra_minus + inter_plus;
}

/**
 * Number of vertex pairs on which two partitions of the same vertex set
 * disagree (co-clustered in exactly one of them). This is the "mistakes with
 * respect to a reference clustering" measure used when the reference is a
 * ground truth rather than the graph.
 */
inline std::int64_t pair_disagreements(const Clustering& a, const Clustering& b) {
    if (a.num_vertices() != b.num_vertices())
        throw std::invalid_argument("clustering vertex-count mismatch");
    Clustering ca = a.canonical();
    Clustering cb = b.canonical();
    std::vector<std::int64_t> sa(static_cast<std::size_t>(ca.num_clusters()), 0);
    std::vector<std::int64_t> sb(static_cast<std::size_t>(cb.num_clusters()), 0);
    std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> joint;
    for (Vertex v = 0; v < a.num_vertices(); ++v) {
        ++sa[static_cast<std::size_t>(ca.cluster_of(v))];
        ++sb[static_cast<std::size_t>(cb.cluster_of(v))];
        ++joint[{ca.cluster_of(v), cb.cluster_of(v)}];
    }
    auto pairs = [](std::int64_t s) { return s * (s - 1) / 2; };
    std::int64_t pa = 0, pb = 0, pj = 0;
    for (std::int64_t s : sa) pa += pairs(s);
    for (std::int64_t s : sb) pb += pairs(s);
    for (const auto& [key, s] : joint) pj += pairs(s);
    return pa + pb - 2 * pj;
}

}  // namespace ccq
