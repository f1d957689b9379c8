#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace ampcg {

// Deterministic 64-bit stream derivation. splitmix64 is used as a mixing
// function over (seed, label, indices) so that every consumer of randomness
// draws from its own independent stream; results are identical across
// platforms and thread counts.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_label(std::string_view label) {
    // FNV-1a, then one splitmix round to spread the bits.
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return splitmix64(h);
}

// Derive a child seed from a parent seed, a purpose label and up to three
// integer coordinates (grid cell, repetition, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                                 std::uint64_t a = 0, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    std::uint64_t s = seed ^ hash_label(label);
    s = splitmix64(s + 0x100000001b3ULL * a);
    s = splitmix64(s + 0x9e3779b97f4a7c15ULL * b);
    s = splitmix64(s + 0xd1b54a32d192ed03ULL * c);
    return s;
}

// mt19937_64 has standard-mandated output, so streams are portable. The
// distribution transforms below are hand-rolled because the standard library
// distribution objects are implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Uniform integer in [0, n). Unbiased rejection sampling.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    // Standard normal via Marsaglia polar; the spare value is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // Signed uniform magnitude: uniform on [lo, hi], sign flipped with
    // probability 1/2.
    double signed_uniform(double lo, double hi) {
        const double mag = uniform(lo, hi);
        return bernoulli(0.5) ? -mag : mag;
    }

  private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace ampcg
