// Seeded random streams. Every stochastic subsystem owns its own stream so
// that changing one subsystem's draws leaves the others untouched, and all
// draws are reproducible from (config, seed) alone.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace semnet {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Wrapper around mt19937_64 with hand-rolled distributions so sequences are
// identical across standard libraries.
class Rng {
public:
    Rng() : Rng(0) {}
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        // Rejection sampling to avoid modulo bias.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return v % n;
    }

    // Standard normal via Box-Muller, one cached value.
    double normal() {
        if (has_cache_) {
            has_cache_ = false;
            return cache_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cache_ = r * std::sin(a);
        has_cache_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Exponential inter-arrival time for the given rate (events per unit time).
    double exponential(double rate) {
        double u = uniform();
        while (u <= 0.0) u = uniform();
        return -std::log(u) / rate;
    }

private:
    std::mt19937_64 eng_;
    double cache_ = 0.0;
    bool has_cache_ = false;
};

// Stateless Gaussian keyed by integers. Used for per-link shadowing so the
// realization depends only on (seed, link, tick) and never on how much of any
// sequential stream other subsystems consumed.
inline double keyed_normal(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = splitmix64(seed ^ splitmix64(a ^ splitmix64(b ^ splitmix64(c))));
    const double u1 = static_cast<double>(splitmix64(h) >> 11) * 0x1.0p-53;
    const double u2 = static_cast<double>(splitmix64(h + 1) >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1 > 0.0 ? u1 : 0x1.0p-53));
    return r * std::cos(6.283185307179586476925286766559 * u2);
}

// The six independent streams of one simulation run.
struct StreamSet {
    Rng topology;
    Rng mobility;
    std::uint64_t channel_key;  // keyed_normal seed for shadowing
    Rng traffic;
    Rng semantics;
    Rng perturbation;

    explicit StreamSet(std::uint64_t master)
        : topology(splitmix64(master ^ 0x746f706fULL)),
          mobility(splitmix64(master ^ 0x6d6f6269ULL)),
          channel_key(splitmix64(master ^ 0x6368616eULL)),
          traffic(splitmix64(master ^ 0x74726166ULL)),
          semantics(splitmix64(master ^ 0x73656d61ULL)),
          perturbation(splitmix64(master ^ 0x70657274ULL)) {}
};

}  // namespace semnet
