#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>

namespace ccq {

/// Deterministic 64-bit generator (splitmix64). Every randomized component
/// of the library draws from explicitly tagged streams of this generator, so
/// a reported run is replayable from its seed on any platform; nothing uses
/// the implementation-defined std <random> distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Independent stream derived from (seed, tag). Streams with distinct
    /// tags stay decorrelated no matter how much either one is consumed.
    static Rng stream(std::uint64_t seed, std::uint64_t tag) {
        return Rng(mix64(seed + 0x9e3779b97f4a7c15ull * (tag + 1)));
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound), bound > 0. Rejection keeps it exactly uniform.
    std::uint64_t next_below(std::uint64_t bound) {
        assert(bound > 0);
        std::uint64_t threshold = (0 - bound) % bound;
        while (true) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    double next_normal(double mean, double sd) {
        // Box-Muller; the second variate is discarded to keep the stream
        // position a simple function of the call count.
        double u1 = 1.0 - next_double();  // (0, 1]
        double u2 = next_double();
        double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
        return mean + sd * z;
    }

    /// Gamma(shape, 1) via Marsaglia-Tsang squeeze.
    double next_gamma(double shape) {
        assert(shape > 0.0);
        if (shape < 1.0) {
            double u = next_double();
            return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        while (true) {
            double x = next_normal(0.0, 1.0);
            double t = 1.0 + c * x;
            if (t <= 0.0) continue;
            double v = t * t * t;
            double u = next_double();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

private:
    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 33;
        z *= 0xff51afd7ed558ccdull;
        z ^= z >> 33;
        z *= 0xc4ceb9fe1a85ec53ull;
        z ^= z >> 33;
        return z;
    }

    std::uint64_t state_;
};

}  // namespace ccq
