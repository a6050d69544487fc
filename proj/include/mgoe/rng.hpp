#pragma once

#include <cstdint>
#include <random>

namespace mgoe {

using Seed = std::uint64_t;

// SplitMix64 finalizer. Used to derive decorrelated sub-stream seeds from a
// master seed so that ensemble members (and grid points) get independent,
// reproducible streams regardless of evaluation order or thread count.
Seed mix64(Seed z);

// Hierarchical seed derivation: derive_seed(master, scope) and
// derive_seed(master, scope, index). Same inputs -> same seed, always.
Seed derive_seed(Seed master, Seed scope);
Seed derive_seed(Seed master, Seed scope, Seed index);

// Scope tags for the sub-streams used by the pipeline.
namespace scope {
inline constexpr Seed sizes = 1;     // mixture size draws
inline constexpr Seed member = 2;    // per-member matrix entries / baseline levels
inline constexpr Seed bootstrap = 3; // bootstrap resampling indices
inline constexpr Seed mu = 4;        // per-grid-point scope (keyed by mu bits)
} // namespace scope

// Inverse of the standard normal CDF (Wichura's AS241 / PPND16 rational
// approximations, accurate to ~1e-16 relative over (0,1)).
double inverse_normal_cdf(double p);

// Deterministic random stream: mt19937_64 with pinned variate recipes.
//   uniform():          u = ((x >> 11) + 0.5) * 2^-53, one engine step, u in (0,1)
//   normal(sigma):      sigma * inverse_normal_cdf(uniform()), one step per variate
//   binomial(n, p):     sum of n Bernoulli(p) draws, exactly n engine steps
//   exponential():      -ln(uniform()), unit mean, one step
// The fixed step counts make every consumer's stream position auditable, so
// results are bit-identical across platforms and across worker counts.
class RandomStream {
public:
    explicit RandomStream(Seed seed) : engine_(seed) {}

    double uniform();
    double normal(double sigma = 1.0);
    int binomial(int trials, double p);
    double exponential();
    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace mgoe
