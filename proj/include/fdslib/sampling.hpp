#pragma once

#include <optional>

#include "fdslib/digraph.hpp"
#include "fdslib/fds.hpp"

namespace fdslib {

// splitmix64 stream; deterministic across platforms, which keeps every seeded
// output byte-identical.
struct Rng {
  u64 state;
  explicit Rng(u64 seed) : state(seed) {}
  u64 next() {
    state += 0x9e3779b97f4a7c15ull;
    u64 z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  u64 below(u64 bound) { return next() % bound; }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Uniform sample from F(D,q) (strict=false) or F[D,q] (strict=true, by
// per-vertex rejection of non-essential tables). Deterministic per seed.
Fds sample_uniform(const Digraph& d, int q, bool strict, u64 seed,
                   const Budget& budget = default_budget());
Fds sample_uniform_with(const Digraph& d, int q, bool strict, Rng& rng,
                        const Budget& budget = default_budget());

struct MonteCarloStats {
  u64 samples = 0;
  double p0 = 0, se_p0 = 0;
  double p1 = 0, se_p1 = 0;
  double p2 = 0, se_p2 = 0;
  double mean_instability = 0, se_mean_instability = 0;
  double mean_stability = 0, se_mean_stability = 0;
};

// Seeded estimates over F(D,q)/F[D,q], or over the full space F(n,q) when no
// digraph is given. Standard errors use the normal approximation. Zero
// samples is an error.
MonteCarloStats monte_carlo_stats(const std::optional<Digraph>& d, int n,
                                  int q, bool strict, u64 samples, u64 seed,
                                  const Budget& budget = default_budget());

}  // namespace fdslib
