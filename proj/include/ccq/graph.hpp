#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ccq/bitset.hpp"

namespace ccq {

using Vertex = std::int32_t;
using VertexPair = std::pair<Vertex, Vertex>;

/**
 * Complete signed graph on n vertices. Only the + adjacency is stored, one
 * bit row per vertex; every pair not listed as + is a - edge. Immutable
 * after construction and safe to share across threads.
 */
class SignedGraph {
public:
    SignedGraph() = default;

    SignedGraph(Vertex n, const std::vector<VertexPair>& plus_edges) : n_(n) {
        if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
        rows_.assign(static_cast<std::size_t>(n), Bitset(n));
        for (const auto& [u, v] : plus_edges) {
            check_pair(u, v);
            if (!rows_[u].test(v)) {
                rows_[u].set(v);
                rows_[v].set(u);
                ++num_plus_;
            }
        }
    }

    Vertex num_vertices() const { return n_; }
    std::int64_t num_plus_edges() const { return num_plus_; }

    bool is_plus(Vertex u, Vertex v) const {
        check_pair(u, v);
        return rows_[u].test(v);
    }

    /// Bit row of + neighbors of u.
    const Bitset& plus_row(Vertex u) const { return rows_[u]; }

    /// All + edges as ascending (u, v) pairs, u < v.
    std::vector<VertexPair> plus_edges() const {
        std::vector<VertexPair> out;
        out.reserve(static_cast<std::size_t>(num_plus_));
        for (Vertex u = 0; u < n_; ++u)
            for (int v = rows_[u].next_set(u + 1); v != -1; v = rows_[u].next_set(v + 1))
                out.emplace_back(u, v);
        return out;
    }

    /// Copy of the graph with the labels of the given pairs flipped. A pair
    /// occurring twice in `pairs` flips back; callers pass distinct pairs.
    SignedGraph with_toggled(const std::vector<VertexPair>& pairs) const {
        SignedGraph g = *this;
        for (const auto& [u, v] : pairs) {
            check_pair(u, v);
            if (g.rows_[u].test(v)) {
                g.rows_[u].reset(v);
                g.rows_[v].reset(u);
                --g.num_plus_;
            } else {
                g.rows_[u].set(v);
                g.rows_[v].set(u);
                ++g.num_plus_;
            }
        }
        return g;
    }

    friend bool operator==(const SignedGraph&, const SignedGraph&) = default;

private:
    void check_pair(Vertex u, Vertex v) const {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw std::invalid_argument("vertex out of range: (" + std::to_string(u) + ", " +
                                        std::to_string(v) + ") with n=" + std::to_string(n_));
        if (u == v) throw std::invalid_argument("self-loop pair: " + std::to_string(u));
    }

    Vertex n_ = 0;
    std::int64_t num_plus_ = 0;
    std::vector<Bitset> rows_;
};

/// Which of the three edges of a (+,+,-) triangle (pivot, v, w) are + / -.
/// At least one pivot edge is + in every such triangle.
enum class TriangleShape : unsigned char {
    kPlusPlus,    // {pivot,v} +, {pivot,w} +, {v,w} -
    kPlusMinus,   // {pivot,v} +, {pivot,w} -, {v,w} +
    kMinusPlus,   // {pivot,v} -, {pivot,w} +, {v,w} +
};

struct Triangle {
    Vertex pivot;
    Vertex v;  // v < w
    Vertex w;
    TriangleShape shape;

    friend bool operator==(const Triangle&, const Triangle&) = default;
};

/**
 * Visits every (+,+,-) triangle that contains `pivot` and whose two other
 * vertices lie in `active`, in ascending (v, w) order, each exactly once.
 * The scan is word-parallel over the bit rows: O(n^2 / 64) per pivot.
 */
template <typename Fn>
void for_each_ppm_triangle(const SignedGraph& g, Vertex pivot, const Bitset& active, Fn&& fn) {
    const Vertex n = g.num_vertices();
    if (pivot < 0 || pivot >= n || !active.test(pivot))
        throw std::invalid_argument("pivot not in active set");

    // P: active + neighbors of the pivot; M: active non-neighbors.
    Bitset p_set = g.plus_row(pivot);
    p_set &= active;
    Bitset m_set = active;
    m_set.subtract(p_set);
    m_set.reset(pivot);

    const std::size_t words = p_set.num_words();
    for (int v = active.next_set(0); v != -1; v = active.next_set(v + 1)) {
        if (v == pivot) continue;
        const Bitset& row_v = g.plus_row(v);
        const bool v_plus = p_set.test(v);
        std::size_t k0 = static_cast<std::size_t>(v) >> 6;
        for (std::size_t k = k0; k < words; ++k) {
            Bitset::Word cand;
            if (v_plus) {
                // w in P and {v,w} -  -> (+,+,-) with both pivot edges +
                // w in M and {v,w} +  -> pivot edge to w is -
                cand = (p_set.word(k) & ~row_v.word(k)) | (m_set.word(k) & row_v.word(k));
            } else {
                // v in M: w must be a + neighbor of both pivot and v
                cand = p_set.word(k) & row_v.word(k);
            }
            if (k == k0) cand &= ~Bitset::Word{0} << (v & 63) << 1;  // w > v only
            while (cand) {
                int w = static_cast<int>(k * Bitset::kWordBits + std::countr_zero(cand));
                cand &= cand - 1;
                TriangleShape shape;
                if (!v_plus)
                    shape = TriangleShape::kMinusPlus;
                else if (p_set.test(w))
                    shape = TriangleShape::kPlusPlus;
                else
                    shape = TriangleShape::kPlusMinus;
                fn(Triangle{pivot, static_cast<Vertex>(v), static_cast<Vertex>(w), shape});
            }
        }
    }
}

inline std::vector<Triangle> enumerate_ppm_triangles(const SignedGraph& g, Vertex pivot,
                                                     const Bitset& active) {
    std::vector<Triangle> out;
    for_each_ppm_triangle(g, pivot, active, [&](const Triangle& t) { out.push_back(t); });
    return out;
}

inline Bitset all_vertices(const SignedGraph& g) {
    Bitset b(g.num_vertices());
    b.set_first_n(g.num_vertices());
    return b;
}

}  // namespace ccq
