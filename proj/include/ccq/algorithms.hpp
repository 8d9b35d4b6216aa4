#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ccq/clustering.hpp"
#include "ccq/graph.hpp"
#include "ccq/oracles.hpp"
#include "ccq/rng.hpp"

namespace ccq {

struct RunOutcome {
    Clustering clustering;
    std::uint64_t queries = 0;   // oracle counter delta over the run
    std::int64_t mistakes = 0;   // disagreements of the output on the input graph
    std::optional<std::uint64_t> seed;
    std::optional<double> parameter_p;
};

/// Instrumentation of one run; filled when a trace pointer is passed. Tests
/// use it to audit per-triangle query accounting and per-pivot behavior.
struct QueryEvent {
    Vertex other;      // edge {pivot, other}
    bool opt_mistake;  // oracle said the backing clustering errs on the edge
};

struct TriangleEvent {
    Vertex v, w;
    TriangleShape shape;
    bool engaged;        // false only for skipped RandomQueryPivot triangles
    int queries_issued;  // new oracle calls made while handling this triangle
    Vertex flagged;      // vertex whose pivot edge got a new mistake flag, or -1
};

struct PivotRecord {
    Vertex pivot;
    std::vector<QueryEvent> queries;
    std::vector<TriangleEvent> triangles;
    std::vector<Vertex> cluster;
    std::vector<Vertex> final_mistake_flags;  // vertices v with Mistake[v] set at cluster formation
};

struct RunTrace {
    std::vector<PivotRecord> pivots;
};

namespace detail {

// RNG stream tags: pivot selection and triangle engagement draw from
// independent streams so that RandomQueryPivot(p=0) walks the same pivot
// sequence as the no-query pivot baseline under the same seed.
inline constexpr std::uint64_t kPivotStream = 0;
inline constexpr std::uint64_t kEngageStream = 1;

inline Vertex lowest_active(const Bitset& active) { return active.next_set(0); }

inline Vertex random_active(const Bitset& active, int remaining, Rng& rng) {
    std::uint64_t idx = rng.next_below(static_cast<std::uint64_t>(remaining));
    int v = active.next_set(0);
    while (idx-- > 0) v = active.next_set(v + 1);
    return v;
}

/// Cluster for `pivot`: v joins iff (+ edge and no mistake flag) or (- edge
/// and mistake flag).
inline std::vector<Vertex> form_cluster(const SignedGraph& g, Vertex pivot, const Bitset& active,
                                        const std::vector<std::uint8_t>& mistake) {
    std::vector<Vertex> cluster{pivot};
    for (int v = active.next_set(0); v != -1; v = active.next_set(v + 1)) {
        if (v == pivot) continue;
        if (g.plus_row(pivot).test(v) != static_cast<bool>(mistake[v])) cluster.push_back(v);
    }
    return cluster;
}

struct PivotState {
    std::vector<std::uint8_t> queried;
    std::vector<std::uint8_t> mistake;
    PivotRecord* record = nullptr;

    explicit PivotState(Vertex n) : queried(static_cast<std::size_t>(n), 0), mistake(n, 0) {}

    void reset(Vertex pivot, RunTrace* trace) {
        std::fill(queried.begin(), queried.end(), 0);
        std::fill(mistake.begin(), mistake.end(), 0);
        record = nullptr;
        if (trace) {
            trace->pivots.emplace_back();
            record = &trace->pivots.back();
            record->pivot = pivot;
        }
    }

    // One oracle call on {pivot, x}; caller guarantees not yet queried.
    bool query(Oracle& o, const SignedGraph& g, Vertex pivot, Vertex x) {
        queried[x] = 1;
        bool err = opt_makes_mistake(o, g, pivot, x);
        if (err) mistake[x] = 1;
        if (record) record->queries.push_back({x, err});
        return err;
    }

    void finish(const SignedGraph& g, Vertex pivot, const Bitset& active,
                const std::vector<Vertex>& cluster) {
        if (!record) return;
        record->cluster = cluster;
        for (int v = active.next_set(0); v != -1; v = active.next_set(v + 1))
            if (mistake[v]) record->final_mistake_flags.push_back(v);
    }
};

template <typename PickPivot, typename HandleTriangle>
RunOutcome pivot_loop(const SignedGraph& g, Oracle* oracle, RunTrace* trace, bool scan_triangles,
                      PickPivot&& pick, HandleTriangle&& handle) {
    const Vertex n = g.num_vertices();
    const std::uint64_t queries_before = oracle ? oracle->query_count() : 0;
    Bitset active = all_vertices(g);
    int remaining = n;
    PivotState state(n);
    std::vector<std::vector<Vertex>> clusters;

    while (remaining > 0) {
        Vertex pivot = pick(active, remaining);
        state.reset(pivot, trace);
        if (scan_triangles)
            for_each_ppm_triangle(g, pivot, active,
                                  [&](const Triangle& t) { handle(t, state); });
        std::vector<Vertex> cluster = form_cluster(g, pivot, active, state.mistake);
        state.finish(g, pivot, active, cluster);
        for (Vertex v : cluster) active.reset(v);
        remaining -= static_cast<int>(cluster.size());
        clusters.push_back(std::move(cluster));
    }

    RunOutcome out;
    out.clustering = Clustering::from_clusters(n, clusters);
    out.queries = oracle ? oracle->query_count() - queries_before : 0;
    out.mistakes = count_disagreements(g, out.clustering);
    return out;
}

}  // namespace detail

/**
 * Deterministic query pivot. Pivot is the lowest-indexed remaining vertex;
 * the (+,+,-) triangles through it are handled in ascending (v, w) order. A
 * triangle is skipped when a mistake is already flagged on either pivot edge
 * or both edges were already queried; otherwise the first unqueried edge is
 * queried, and the second one only if the first revealed no mistake. With an
 * oracle backed by an optimal clustering the output equals that clustering,
 * with at most two queries per optimal mistake.
 */
inline RunOutcome query_pivot(const SignedGraph& g, Oracle& oracle, RunTrace* trace = nullptr) {
    if (oracle.num_vertices() != g.num_vertices())
        throw std::invalid_argument("oracle domain does not match graph");
    return detail::pivot_loop(
        g, &oracle, trace, /*scan_triangles=*/true,
        [](const Bitset& active, int) { return detail::lowest_active(active); },
        [&](const Triangle& t, detail::PivotState& s) {
            int issued = 0;
            Vertex flagged = -1;
            bool skipped = s.mistake[t.v] || s.mistake[t.w] || (s.queried[t.v] && s.queried[t.w]);
            if (!skipped) {
                if (!s.queried[t.v]) {
                    ++issued;
                    if (s.query(oracle, g, t.pivot, t.v)) flagged = t.v;
                }
                if (!s.queried[t.w] && !s.mistake[t.v]) {
                    ++issued;
                    if (s.query(oracle, g, t.pivot, t.w)) flagged = t.w;
                }
            }
            if (s.record) s.record->triangles.push_back({t.v, t.w, t.shape, true, issued, flagged});
        });
}

/**
 * Randomized query pivot. Pivot is uniform among remaining vertices; each
 * (+,+,-) triangle is engaged independently with probability p. In an
 * engaged triangle the + pivot edge is handled first; when the other pivot
 * edge is also + it is queried regardless of the first answer, and when it
 * is - it is queried only if the first edge was clean. Per pivot, an edge is
 * queried at most once and the recorded answer is reused. Deterministic
 * given the seed.
 */
inline RunOutcome random_query_pivot(const SignedGraph& g, Oracle& oracle, double p,
                                     std::uint64_t seed, RunTrace* trace = nullptr) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in [0, 1]");
    if (oracle.num_vertices() != g.num_vertices())
        throw std::invalid_argument("oracle domain does not match graph");
    Rng pivot_rng = Rng::stream(seed, detail::kPivotStream);
    Rng engage_rng = Rng::stream(seed, detail::kEngageStream);

    RunOutcome out = detail::pivot_loop(
        g, &oracle, trace, /*scan_triangles=*/true,
        [&](const Bitset& active, int remaining) {
            return detail::random_active(active, remaining, pivot_rng);
        },
        [&](const Triangle& t, detail::PivotState& s) {
            bool engaged = engage_rng.next_double() < p;
            int issued = 0;
            Vertex flagged = -1;
            if (engaged) {
                Vertex a = t.v, b = t.w;
                if (t.shape == TriangleShape::kMinusPlus) std::swap(a, b);  // + edge first
                if (!s.queried[a]) {
                    ++issued;
                    if (s.query(oracle, g, t.pivot, a)) flagged = a;
                }
                bool b_plus = (t.shape == TriangleShape::kPlusPlus);
                if (!s.mistake[a] || b_plus) {
                    if (!s.queried[b]) {
                        ++issued;
                        if (s.query(oracle, g, t.pivot, b)) flagged = b;
                    }
                }
            }
            if (s.record)
                s.record->triangles.push_back({t.v, t.w, t.shape, engaged, issued, flagged});
        });
    out.seed = seed;
    out.parameter_p = p;
    return out;
}

/**
 * No-query pivot baseline: uniform-random pivot, cluster = pivot plus its
 * remaining + neighbors. Shares the pivot stream contract with
 * random_query_pivot, whose p = 0 case it matches exactly.
 */
inline RunOutcome acn_pivot(const SignedGraph& g, std::uint64_t seed, RunTrace* trace = nullptr) {
    Rng pivot_rng = Rng::stream(seed, detail::kPivotStream);
    RunOutcome out = detail::pivot_loop(
        g, nullptr, trace, /*scan_triangles=*/false,
        [&](const Bitset& active, int remaining) {
            return detail::random_active(active, remaining, pivot_rng);
        },
        [](const Triangle&, detail::PivotState&) {});
    out.seed = seed;
    return out;
}

}  // namespace ccq
