#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ccq/clustering.hpp"
#include "ccq/graph.hpp"
#include "ccq/rng.hpp"

namespace ccq {

/// Thrown when the exact search exceeds its node budget; the instance is too
/// large for exact mode. Never degrades to a heuristic answer silently.
class BudgetExhaustedError : public std::runtime_error {
public:
    explicit BudgetExhaustedError(std::int64_t budget)
        : std::runtime_error("exact solver node budget exhausted (" + std::to_string(budget) +
                             " nodes)") {}
};

struct ExactOptions {
    /// Search-node limit, enforced for n > 12. Up to n = 12 the restricted
    /// growth enumeration always runs to completion.
    std::int64_t node_budget = 10'000'000;
};

struct ExactResult {
    Clustering clustering;  // canonical; lexicographically smallest optimum
    std::int64_t cost = 0;
    std::int64_t nodes_explored = 0;
};

/**
 * Greedy edge-disjoint packing of (+,+,-) triangles inside `active`. Each
 * packed triangle forces at least one mistake in any clustering and the
 * triangles share no edge, so the count is a lower bound on the optimal
 * number of disagreements of the induced subgraph.
 *
 * Every (+,+,-) triangle consumes its - edge exactly once, so the greedy
 * walks - edges in ascending order and completes each with the first unused
 * (+,+) wedge.
 */
inline std::int64_t ppm_packing_bound(const SignedGraph& g, const Bitset& active) {
    const Vertex n = g.num_vertices();
    std::vector<Bitset> avail;  // + edges not yet consumed, restricted to active
    avail.reserve(static_cast<std::size_t>(n));
    for (Vertex u = 0; u < n; ++u) {
        Bitset row = g.plus_row(u);
        row &= active;
        if (!active.test(u)) row = Bitset(n);
        avail.push_back(std::move(row));
    }
    std::int64_t packed = 0;
    for (int u = active.next_set(0); u != -1; u = active.next_set(u + 1)) {
        for (int v = active.next_set(u + 1); v != -1; v = active.next_set(v + 1)) {
            if (g.plus_row(u).test(v)) continue;  // want - edges {u,v}
            const Bitset& au = avail[static_cast<std::size_t>(u)];
            const Bitset& av = avail[static_cast<std::size_t>(v)];
            int w = -1;
            for (std::size_t k = 0; k < au.num_words(); ++k) {
                Bitset::Word both = au.word(k) & av.word(k);
                if (both) {
                    w = static_cast<int>(k * Bitset::kWordBits + std::countr_zero(both));
                    break;
                }
            }
            if (w == -1) continue;
            avail[static_cast<std::size_t>(u)].reset(w);
            avail[static_cast<std::size_t>(w)].reset(u);
            avail[static_cast<std::size_t>(v)].reset(w);
            avail[static_cast<std::size_t>(w)].reset(v);
            ++packed;
        }
    }
    return packed;
}

/// Size of a greedy edge-disjoint (+,+,-) triangle packing of the whole
/// graph; a lower bound on the optimal disagreement count.
inline std::int64_t lower_bound_ppm(const SignedGraph& g) {
    return ppm_packing_bound(g, all_vertices(g));
}

/// Connected components of the + edges, as a clustering.
inline Clustering plus_components(const SignedGraph& g) {
    const Vertex n = g.num_vertices();
    std::vector<std::int32_t> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::int32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Vertex u = 0; u < n; ++u)
        for (int v = g.plus_row(u).next_set(u + 1); v != -1; v = g.plus_row(u).next_set(v + 1))
            parent[find(u)] = find(v);
    std::vector<std::int32_t> a(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) a[v] = find(v);
    return Clustering(std::move(a)).canonical();
}

namespace detail {

/// Single-vertex move local search: repeatedly relocate a vertex to the
/// cluster (or a fresh singleton) that lowers the disagreement count most,
/// until a full pass makes no move. Deterministic.
inline Clustering vertex_move_local_search(const SignedGraph& g, const Clustering& start) {
    const Vertex n = g.num_vertices();
    std::vector<std::int32_t> assign = start.canonical().assignment();
    std::int32_t num_clusters = 0;
    for (std::int32_t c : assign) num_clusters = std::max(num_clusters, c + 1);
    std::vector<std::int32_t> size(static_cast<std::size_t>(n) + 1, 0);
    for (std::int32_t c : assign) ++size[c];

    std::vector<std::int32_t> plus_to(static_cast<std::size_t>(n) + 1, 0);
    bool moved = true;
    for (int pass = 0; pass < 200 && moved; ++pass) {
        moved = false;
        for (Vertex v = 0; v < n; ++v) {
            std::fill(plus_to.begin(), plus_to.begin() + num_clusters + 1, 0);
            std::int32_t deg = 0;
            const Bitset& row = g.plus_row(v);
            for (int u = row.next_set(0); u != -1; u = row.next_set(u + 1)) {
                ++plus_to[assign[u]];
                ++deg;
            }
            std::int32_t cur = assign[v];
            // cost contribution of v in cluster c: minus edges inside + plus edges out
            auto cost_in = [&](std::int32_t c) {
                std::int32_t inside = size[c] - (c == cur ? 1 : 0);
                return (inside - plus_to[c]) + (deg - plus_to[c]);
            };
            std::int32_t best_c = cur;
            std::int32_t best_cost = cost_in(cur);
            for (std::int32_t c = 0; c < num_clusters; ++c) {
                if (c == cur) continue;
                std::int32_t cost = cost_in(c);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_c = c;
                }
            }
            if (deg < best_cost && size[cur] > 1) {  // fresh singleton
                best_c = num_clusters;
                best_cost = deg;
            }
            if (best_c != cur) {
                if (best_c == num_clusters) ++num_clusters;
                --size[cur];
                ++size[best_c];
                assign[v] = best_c;
                moved = true;
            }
        }
    }
    return Clustering(std::move(assign)).canonical();
}

/// Random-pivot clustering (pivot joined with its remaining + neighbors),
/// used only to seed the branch-and-bound upper bound.
inline Clustering pivot_heuristic(const SignedGraph& g, std::uint64_t seed) {
    const Vertex n = g.num_vertices();
    Rng rng(seed);
    Bitset active = all_vertices(g);
    int remaining = n;
    std::vector<std::int32_t> assign(static_cast<std::size_t>(n), 0);
    std::int32_t next_id = 0;
    while (remaining > 0) {
        std::uint64_t idx = rng.next_below(static_cast<std::uint64_t>(remaining));
        int pivot = active.next_set(0);
        while (idx-- > 0) pivot = active.next_set(pivot + 1);
        assign[pivot] = next_id;
        active.reset(pivot);
        --remaining;
        const Bitset& row = g.plus_row(pivot);
        for (int v = active.next_set(0); v != -1; v = active.next_set(v + 1)) {
            if (row.test(v)) {
                assign[v] = next_id;
                active.reset(v);
                --remaining;
            }
        }
        ++next_id;
    }
    return Clustering(std::move(assign));
}

inline Clustering heuristic_upper_bound(const SignedGraph& g) {
    Clustering best = vertex_move_local_search(g, plus_components(g));
    std::int64_t best_cost = count_disagreements(g, best);
    for (std::uint64_t s = 0; s < 16; ++s) {
        Clustering c = vertex_move_local_search(g, pivot_heuristic(g, s));
        std::int64_t cost = count_disagreements(g, c);
        if (cost < best_cost) {
            best_cost = cost;
            best = std::move(c);
        }
    }
    return best;
}

/**
 * Exact search over restricted growth strings: vertex i joins one of the
 * clusters opened by vertices 0..i-1 or a fresh one, in ascending cluster
 * order, so assignments are visited in lexicographic canonical order.
 *
 * Node bound = prefix cost
 *            + per unassigned vertex, the cheapest attachment to the fixed
 *              prefix clusters (or a fresh cluster)
 *            + a (+,+,-) triangle packing of the unassigned suffix.
 * The three parts touch disjoint edge sets, so their sum is a lower bound.
 */
class ExactSearch {
public:
    ExactSearch(const SignedGraph& g, std::int64_t node_budget)
        : g_(g),
          n_(g.num_vertices()),
          stride_(static_cast<std::size_t>(n_) + 1),
          enforce_budget_(n_ > 12),
          budget_(node_budget) {
        d_.assign(static_cast<std::size_t>(n_) * stride_, 0);
        plus_assigned_.assign(static_cast<std::size_t>(n_), 0);
        assign_.assign(static_cast<std::size_t>(n_), -1);

        suffix_pack_.assign(static_cast<std::size_t>(n_) + 1, 0);
        Bitset active(n_);
        for (Vertex i = n_ - 1; i >= 0; --i) {
            active.set(i);
            std::int64_t p = ppm_packing_bound(g_, active);
            // a packing of a smaller suffix is still a packing here
            suffix_pack_[i] = std::max(p, suffix_pack_[i + 1]);
        }
    }

    ExactResult run() {
        Clustering heuristic = heuristic_upper_bound(g_);
        best_cost_ = count_disagreements(g_, heuristic);

        // Phase 1: establish the optimal cost, pruning subtrees that cannot
        // strictly improve.
        stop_at_first_ = false;
        have_solution_ = false;
        dfs(0, 0, 0);

        // Phase 2: first leaf of cost C_OPT in lexicographic order is the
        // lexicographically smallest canonical optimum.
        stop_at_first_ = true;
        have_solution_ = false;
        dfs(0, 0, 0);

        return ExactResult{Clustering(best_assign_), best_cost_, nodes_};
    }

private:
    std::int64_t node_bound(Vertex i, std::int64_t cost, std::int32_t k, std::int64_t cap) const {
        std::int64_t b = cost + suffix_pack_[i];
        if (b >= cap) return b;
        for (Vertex u = i; u < n_; ++u) {
            const std::int32_t* du = &d_[static_cast<std::size_t>(u) * stride_];
            std::int32_t best = 0;
            for (std::int32_t c = 0; c < k; ++c) best = std::min(best, du[c]);
            b += plus_assigned_[u] + best;
            if (b >= cap) return b;
        }
        return b;
    }

    void place(Vertex i, std::int32_t c, bool fresh) {
        assign_[i] = c;
        const Bitset& row = g_.plus_row(i);
        for (Vertex u = i + 1; u < n_; ++u) {
            std::int32_t* duc = &d_[static_cast<std::size_t>(u) * stride_ + c];
            bool plus = row.test(u);
            if (fresh) *duc = plus ? -1 : 1;
            else *duc += plus ? -1 : 1;
            plus_assigned_[u] += plus ? 1 : 0;
        }
    }

    void unplace(Vertex i, std::int32_t c, bool fresh) {
        assign_[i] = -1;
        const Bitset& row = g_.plus_row(i);
        for (Vertex u = i + 1; u < n_; ++u) {
            bool plus = row.test(u);
            if (!fresh) d_[static_cast<std::size_t>(u) * stride_ + c] -= plus ? -1 : 1;
            plus_assigned_[u] -= plus ? 1 : 0;
        }
    }

    // Returns true when the phase-2 leaf has been found and the search can stop.
    bool dfs(Vertex i, std::int64_t cost, std::int32_t k) {
        ++nodes_;
        if (enforce_budget_ && nodes_ > budget_) throw BudgetExhaustedError(budget_);
        if (i == n_) {
            if (cost < best_cost_ || (stop_at_first_ && !have_solution_ && cost == best_cost_)) {
                best_cost_ = cost;
                best_assign_ = assign_;
                have_solution_ = true;
            }
            return stop_at_first_ && have_solution_;
        }
        const std::int64_t cap = stop_at_first_ ? best_cost_ + 1 : best_cost_;
        if (node_bound(i, cost, k, cap) >= cap) return false;

        for (std::int32_t c = 0; c <= k; ++c) {
            const bool fresh = (c == k);
            std::int64_t inc = plus_assigned_[i] +
                               (fresh ? 0 : d_[static_cast<std::size_t>(i) * stride_ + c]);
            std::int64_t child = cost + inc;
            if (child + suffix_pack_[i + 1] >= (stop_at_first_ ? best_cost_ + 1 : best_cost_))
                continue;
            place(i, c, fresh);
            bool done = dfs(i + 1, child, fresh ? k + 1 : k);
            unplace(i, c, fresh);
            if (done) return true;
        }
        return false;
    }

    const SignedGraph& g_;
    Vertex n_;
    std::size_t stride_;
    bool enforce_budget_;
    std::int64_t budget_;
    bool stop_at_first_ = false;
    bool have_solution_ = false;

    std::vector<std::int32_t> d_;  // d[u][c] = (- edges u->cluster c) - (+ edges u->cluster c)
    std::vector<std::int32_t> plus_assigned_;
    std::vector<std::int32_t> assign_, best_assign_;
    std::vector<std::int64_t> suffix_pack_;
    std::int64_t best_cost_ = 0;
    std::int64_t nodes_ = 0;
};

}  // namespace detail

/**
 * Minimum-disagreement clustering. Ties among optima are broken toward the
 * lexicographically smallest canonical assignment vector, so the result is a
 * single distinguished optimum, deterministic across calls.
 *
 * Throws BudgetExhaustedError when n > 12 and the search exceeds
 * options.node_budget.
 */
inline ExactResult solve_exact(const SignedGraph& g, const ExactOptions& options = {}) {
    if (g.num_vertices() == 0) return ExactResult{Clustering(std::vector<std::int32_t>{}), 0, 0};
    detail::ExactSearch search(g, options.node_budget);
    return search.run();
}

}  // namespace ccq
