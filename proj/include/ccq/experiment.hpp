#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ccq/algorithms.hpp"
#include "ccq/datagen.hpp"
#include "ccq/exact.hpp"
#include "ccq/graph_io.hpp"
#include "ccq/oracles.hpp"

namespace ccq {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class AlgKind { kQp, kRqp, kAcn, kExact };

inline std::string alg_name(AlgKind k) {
    switch (k) {
        case AlgKind::kQp: return "qp";
        case AlgKind::kRqp: return "rqp";
        case AlgKind::kAcn: return "acn";
        case AlgKind::kExact: return "exact";
    }
    return "?";
}

struct AlgSpec {
    AlgKind kind = AlgKind::kQp;
    double p = 0.25;  // rqp only
    int trials = 0;   // 0: use the config-wide trial count (randomized algs only)
};

enum class OracleRegime { kOpt, kTruth, kNoisy };

inline std::string oracle_regime_name(OracleRegime r) {
    switch (r) {
        case OracleRegime::kOpt: return "opt";
        case OracleRegime::kTruth: return "truth";
        case OracleRegime::kNoisy: return "noisy";
    }
    return "?";
}

/**
 * Batch experiment description, read from a flat key = value file. Instances
 * come either from graph/truth files or from a generated family; the
 * algorithm list carries per-algorithm parameters.
 */
struct ExperimentConfig {
    // instance source: either a file pair ...
    std::string graph_path;
    std::string truth_path;
    // ... or a generated family
    std::optional<FamilySpec> family;
    NoiseModel noise = NoiseModel::kNone;
    std::int64_t flip_budget = -1;  // -1: family default
    double l1 = 0.01, l2 = 0.1;
    int instances = 1;
    std::uint64_t gen_seed = 0;

    std::vector<AlgSpec> algs;
    int trials = 3;  // the paper protocol averages 3 runs of randomized algorithms
    std::uint64_t seed = 1;

    OracleRegime oracle = OracleRegime::kOpt;
    double noisy_rate = 0.1;
    int noisy_votes = 5;
    std::uint64_t noisy_seed = 0;

    int threads = 0;  // 0: hardware concurrency
    std::int64_t exact_budget = 10'000'000;
    std::string out_path = "results.csv";
};

struct RunRow {
    std::string instance_id;
    std::string family;
    std::string noise;
    std::string algorithm;
    std::string params;
    std::string oracle;
    std::string trial_seed;  // seed for randomized runs, "-" otherwise, "mean" in summary rows
    bool ok = true;
    std::int64_t mistakes = 0;
    std::uint64_t queries = 0;
    double elapsed_ms = 0.0;
    std::string error;
};

struct ExperimentResult {
    std::vector<RunRow> rows;     // one per run, deterministic order
    std::vector<RunRow> summary;  // per (instance, algorithm) means over trials
    bool any_error = false;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

inline AlgSpec parse_alg_token(const std::string& token) {
    std::vector<std::string> parts = split(token, ':');
    if (parts.empty() || parts[0].empty()) throw ConfigError("empty algorithm token");
    AlgSpec spec;
    if (parts[0] == "qp") spec.kind = AlgKind::kQp;
    else if (parts[0] == "rqp") spec.kind = AlgKind::kRqp;
    else if (parts[0] == "acn") spec.kind = AlgKind::kAcn;
    else if (parts[0] == "exact") spec.kind = AlgKind::kExact;
    else throw ConfigError("unknown algorithm: " + parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) {
        std::size_t eq = parts[i].find('=');
        if (eq == std::string::npos) throw ConfigError("bad algorithm option: " + parts[i]);
        std::string key = trim(parts[i].substr(0, eq));
        std::string value = trim(parts[i].substr(eq + 1));
        if (key == "p" && spec.kind == AlgKind::kRqp) spec.p = std::stod(value);
        else if (key == "trials") spec.trials = std::stoi(value);
        else throw ConfigError("bad option `" + key + "` for algorithm " + parts[0]);
    }
    return spec;
}

inline std::string format_double(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
    return buf;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    int workers = std::min<std::size_t>(threads, count);
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

inline ExperimentConfig parse_experiment_config(std::istream& in,
                                                std::uint64_t default_seed = 1) {
    ExperimentConfig cfg;
    cfg.seed = default_seed;
    std::string family_str, noise_str = "none", oracle_str = "opt", algs_str, sizes_str;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected `key = value`");
        std::string key = detail::trim(t.substr(0, eq));
        std::string value = detail::trim(t.substr(eq + 1));
        try {
            if (key == "graph") cfg.graph_path = value;
            else if (key == "truth") cfg.truth_path = value;
            else if (key == "family") family_str = value;
            else if (key == "noise") noise_str = value;
            else if (key == "L") cfg.flip_budget = std::stoll(value);
            else if (key == "l1") cfg.l1 = std::stod(value);
            else if (key == "l2") cfg.l2 = std::stod(value);
            else if (key == "n") cfg.family.emplace().n = 0, family_str_n_ = value;  // placeholder
            else if (key == "instances") cfg.instances = std::stoi(value);
            else if (key == "gen_seed") cfg.gen_seed = std::stoull(value);
            else if (key == "algs") algs_str = value;
            else if (key == "trials") cfg.trials = std::stoi(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "oracle") oracle_str = value;
            else if (key == "noisy_rate") cfg.noisy_rate = std::stod(value);
            else if (key == "noisy_votes") cfg.noisy_votes = std::stoi(value);
            else if (key == "noisy_seed") cfg.noisy_seed = std::stoull(value);
            else if (key == "threads") cfg.threads = std::stoi(value);
            else if (key == "exact_budget") cfg.exact_budget = std::stoll(value);
            else if (key == "sizes") sizes_str = value;
            else if (key == "out") cfg.out_path = value;
            else throw ConfigError("line " + std::to_string(lineno) + ": unknown key `" + key + "`");
        } catch (const std::invalid_argument&) {
            throw ConfigError("line " + std::to_string(lineno) + ": bad value for `" + key + "`");
        }
    }
    return cfg;
}

}  // namespace ccq
