#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "ccq/clustering.hpp"
#include "ccq/exact.hpp"
#include "ccq/graph.hpp"
#include "ccq/rng.hpp"

namespace ccq {

/**
 * Answer source for same-cluster questions, with query accounting. Every
 * same_cluster call increments the counter, including repeats of the same
 * pair; callers that want caching keep their own Queried state.
 */
class Oracle {
public:
    virtual ~Oracle() = default;

    bool same_cluster(Vertex u, Vertex v) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw std::invalid_argument("oracle query out of range");
        if (u == v) throw std::invalid_argument("oracle query on identical vertices");
        ++queries_;
        return answer(u, v);
    }

    std::uint64_t query_count() const { return queries_; }
    Vertex num_vertices() const { return n_; }

protected:
    explicit Oracle(Vertex n) : n_(n) {}
    virtual bool answer(Vertex u, Vertex v) = 0;

private:
    Vertex n_;
    std::uint64_t queries_ = 0;
};

/// True iff the oracle's clustering disagrees with the label of {u, v}:
/// co-clustered across a - edge or separated across a + edge. Issues exactly
/// one same-cluster query.
inline bool opt_makes_mistake(Oracle& o, const SignedGraph& g, Vertex u, Vertex v) {
    return o.same_cluster(u, v) != g.is_plus(u, v);
}

/// Oracle answering from one fixed clustering; deterministic and transitively
/// consistent.
class TruthOracle final : public Oracle {
public:
    explicit TruthOracle(Clustering backing)
        : Oracle(backing.num_vertices()), backing_(std::move(backing)) {}

    const Clustering& backing() const { return backing_; }

protected:
    bool answer(Vertex u, Vertex v) override { return backing_.same_cluster(u, v); }

private:
    Clustering backing_;
};

struct NoisyOracleSpec {
    Clustering base;              // the underlying truth
    double per_answer_error_rate = 0.0;
    int votes = 3;                // odd; majority size
    std::uint64_t seed = 0;
};

/**
 * Simulated crowd: each pair is asked `votes` times, each answer is the true
 * one flipped independently with probability per_answer_error_rate, and the
 * majority wins. One crowd task per pair: the outcome is memoized, and the
 * per-pair vote stream is derived from (seed, pair), so the full answer table
 * is a deterministic function of (base, rate, votes, seed) regardless of
 * query order.
 */
class NoisyOracle final : public Oracle {
public:
    explicit NoisyOracle(NoisyOracleSpec spec) : Oracle(spec.base.num_vertices()), spec_(std::move(spec)) {
        if (spec_.votes <= 0 || spec_.votes % 2 == 0)
            throw std::invalid_argument("votes must be an odd positive integer");
        if (spec_.per_answer_error_rate < 0.0 || spec_.per_answer_error_rate > 1.0)
            throw std::invalid_argument("per-answer error rate must be in [0, 1]");
    }

protected:
    bool answer(Vertex u, Vertex v) override {
        std::uint64_t key = pair_key(u, v);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool truth = spec_.base.same_cluster(u, v);
        Rng rng = Rng::stream(spec_.seed, key);
        int wrong = 0;
        for (int i = 0; i < spec_.votes; ++i)
            if (rng.bernoulli(spec_.per_answer_error_rate)) ++wrong;
        bool result = (wrong > spec_.votes / 2) ? !truth : truth;
        memo_.emplace(key, result);
        return result;
    }

private:
    static std::uint64_t pair_key(Vertex u, Vertex v) {
        if (u > v) std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
    }

    NoisyOracleSpec spec_;
    std::unordered_map<std::uint64_t, bool> memo_;
};

inline TruthOracle make_truth_oracle(Clustering c) { return TruthOracle(std::move(c)); }

/// Oracle backed by the exact solver's distinguished optimal clustering.
/// Throws BudgetExhaustedError when the instance exceeds the exact budget.
inline TruthOracle make_optimal_oracle(const SignedGraph& g, const ExactOptions& options = {}) {
    return TruthOracle(solve_exact(g, options).clustering);
}

}  // namespace ccq
