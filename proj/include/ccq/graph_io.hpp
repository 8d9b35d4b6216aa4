#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccq/clustering.hpp"
#include "ccq/datagen.hpp"
#include "ccq/graph.hpp"

namespace ccq {

/// File-format or filesystem error; the message carries path and line number.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Lines of a text file with their 1-based numbers, comments (#...) and
/// blank lines dropped.
class LineReader {
public:
    explicit LineReader(const std::string& path) : path_(path), in_(path) {
        if (!in_) throw IoError(path + ": cannot open for reading");
    }

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++lineno_;
            std::size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos) continue;
            if (line[start] == '#') continue;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw IoError(path_ + ":" + std::to_string(lineno_) + ": " + msg);
    }

private:
    std::string path_;
    std::ifstream in_;
    int lineno_ = 0;
};

}  // namespace detail

/**
 * Signed-graph file: first data line `n m`, then m lines `u v s` with
 * 0 <= u < v < n and s one of +/-. Pairs not listed are -. `#` starts a
 * comment line.
 */
inline SignedGraph read_graph(const std::string& path) {
    detail::LineReader reader(path);
    std::string line;
    if (!reader.next(line)) reader.fail("missing header line");
    long long n, m;
    {
        std::istringstream ss(line);
        if (!(ss >> n >> m) || n < 0 || m < 0) reader.fail("malformed header, expected `n m`");
    }
    std::vector<VertexPair> plus;
    std::vector<std::vector<std::pair<Vertex, char>>> seen(static_cast<std::size_t>(n));
    for (long long i = 0; i < m; ++i) {
        if (!reader.next(line)) reader.fail("expected " + std::to_string(m) + " edge lines");
        std::istringstream ss(line);
        long long u, v;
        std::string sign;
        if (!(ss >> u >> v >> sign) || (sign != "+" && sign != "-"))
            reader.fail("malformed edge line, expected `u v +|-`");
        if (u < 0 || v >= n || u >= v)
            reader.fail("edge endpoints must satisfy 0 <= u < v < n");
        char s = sign[0];
        for (const auto& [pv, ps] : seen[static_cast<std::size_t>(u)])
            if (pv == v && ps != s) reader.fail("duplicate pair with conflicting signs");
        seen[static_cast<std::size_t>(u)].emplace_back(static_cast<Vertex>(v), s);
        if (s == '+') plus.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (reader.next(line)) reader.fail("trailing data after " + std::to_string(m) + " edges");
    return SignedGraph(static_cast<Vertex>(n), plus);
}

/// Writes only the + edges; everything unlisted is -.
inline void write_graph(const SignedGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << g.num_vertices() << ' ' << g.num_plus_edges() << '\n';
    for (const auto& [u, v] : g.plus_edges()) out << u << ' ' << v << " +\n";
    if (!out) throw IoError(path + ": write failed");
}

/// Clustering file: one `vertex cluster_id` line per vertex; the vertices
/// must form exactly 0..n-1.
inline Clustering read_clustering(const std::string& path) {
    detail::LineReader reader(path);
    std::string line;
    std::vector<std::pair<long long, long long>> rows;
    while (reader.next(line)) {
        std::istringstream ss(line);
        long long v, c;
        if (!(ss >> v >> c)) reader.fail("malformed line, expected `vertex cluster_id`");
        if (c < 0) reader.fail("cluster ids must be non-negative");
        rows.emplace_back(v, c);
    }
    std::vector<std::int32_t> assign(rows.size(), -1);
    for (const auto& [v, c] : rows) {
        if (v < 0 || v >= static_cast<long long>(rows.size()))
            throw IoError(path + ": vertex " + std::to_string(v) + " out of range");
        if (assign[static_cast<std::size_t>(v)] != -1)
            throw IoError(path + ": vertex " + std::to_string(v) + " listed twice");
        assign[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(c);
    }
    return Clustering(std::move(assign));
}

inline void write_clustering(const Clustering& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    for (Vertex v = 0; v < c.num_vertices(); ++v) out << v << ' ' << c.cluster_of(v) << '\n';
    if (!out) throw IoError(path + ": write failed");
}

/**
 * Weighted file: first data line `n m`, then m lines `u v w` with w a
 * decimal in [0, 1]. Feeds threshold_weighted (+ iff w >= 1/2; missing pairs
 * are -).
 */
inline SignedGraph read_weighted(const std::string& path) {
    detail::LineReader reader(path);
    std::string line;
    if (!reader.next(line)) reader.fail("missing header line");
    long long n, m;
    {
        std::istringstream ss(line);
        if (!(ss >> n >> m) || n < 0 || m < 0) reader.fail("malformed header, expected `n m`");
    }
    std::vector<WeightedEdge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        if (!reader.next(line)) reader.fail("expected " + std::to_string(m) + " edge lines");
        std::istringstream ss(line);
        long long u, v;
        double w;
        if (!(ss >> u >> v >> w)) reader.fail("malformed edge line, expected `u v w`");
        if (u < 0 || v >= n || u >= v) reader.fail("edge endpoints must satisfy 0 <= u < v < n");
        if (w < 0.0 || w > 1.0) reader.fail("weight outside [0, 1]");
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
    }
    if (reader.next(line)) reader.fail("trailing data after " + std::to_string(m) + " edges");
    try {
        return threshold_weighted(edges, static_cast<Vertex>(n));
    } catch (const std::invalid_argument& e) {
        throw IoError(path + ": " + e.what());
    }
}

}  // namespace ccq
