#include "fdslib/sampling.hpp"

#include <cmath>

#include "fdslib/enumeration.hpp"
#include "fdslib/scan.hpp"

namespace fdslib {

Fds sample_uniform_with(const Digraph& d, int q, bool strict, Rng& rng,
                        const Budget& budget) {
  if (q < 2 || q > kMaxAlphabet) throw DomainError("sample_uniform: bad alphabet");
  Fds f;
  f.n = d.vertex_count();
  f.q = q;
  f.locals.resize(f.n);
  for (int v = 1; v <= f.n; ++v) {
    auto& lf = f.locals[v - 1];
    lf.support = d.in_neighbours(v);
    const int deg = static_cast<int>(lf.support.size());
    const u64 entries = table_size_for(deg, q, budget.max_state_scans);
    lf.table.resize(entries);
    bool accepted = false;
    for (int attempt = 0; attempt < 10000 && !accepted; ++attempt) {
      for (u64 e = 0; e < entries; ++e)
        lf.table[e] = static_cast<value_t>(rng.below(q));
      accepted = !strict || table_essential_on_all(lf.table, deg, q);
    }
    if (!accepted)
      throw DomainError("sample_uniform: essential-table rejection failed");
  }
  return f;
}

Fds sample_uniform(const Digraph& d, int q, bool strict, u64 seed,
                   const Budget& budget) {
  Rng rng(mix64(seed));
  return sample_uniform_with(d, q, strict, rng, budget);
}

MonteCarloStats monte_carlo_stats(const std::optional<Digraph>& d, int n,
                                  int q, bool strict, u64 samples, u64 seed,
                                  const Budget& budget) {
  if (samples == 0) throw DomainError("monte_carlo_stats: zero samples");
  Digraph graph(0);
  if (d) {
    graph = *d;
  } else {
    // The full space F(n,q): every local sees every coordinate.
    graph = Digraph(n);
    for (int u = 1; u <= n; ++u)
      for (int v = 1; v <= n; ++v) graph.add_arc(u, v);
    strict = false;
  }

  Rng rng(mix64(seed));
  u64 c0 = 0, c1 = 0, c2 = 0;
  double sum_i = 0, sumsq_i = 0, sum_s = 0, sumsq_s = 0;
  for (u64 it = 0; it < samples; ++it) {
    Fds f = sample_uniform_with(graph, q, strict, rng, budget);
    ScanOptions opts;
    opts.budget = budget;
    auto stats = scan_states(f, opts);
    if (stats.fixed_count == 0)
      ++c0;
    else if (stats.fixed_count == 1)
      ++c1;
    else
      ++c2;
    double inst = stats.min_dh;
    double stab = f.n - stats.max_dh;
    sum_i += inst;
    sumsq_i += inst * inst;
    sum_s += stab;
    sumsq_s += stab * stab;
  }

  auto proportion_se = [samples](double p) {
    return std::sqrt(p * (1 - p) / static_cast<double>(samples));
  };
  auto mean_se = [samples](double sum, double sumsq) {
    if (samples < 2) return 0.0;
    double mean = sum / samples;
    double var = (sumsq - samples * mean * mean) / (samples - 1.0);
    return std::sqrt(std::max(0.0, var) / samples);
  };

  MonteCarloStats out;
  out.samples = samples;
  out.p0 = static_cast<double>(c0) / samples;
  out.p1 = static_cast<double>(c1) / samples;
  out.p2 = static_cast<double>(c2) / samples;
  out.se_p0 = proportion_se(out.p0);
  out.se_p1 = proportion_se(out.p1);
  out.se_p2 = proportion_se(out.p2);
  out.mean_instability = sum_i / samples;
  out.se_mean_instability = mean_se(sum_i, sumsq_i);
  out.mean_stability = sum_s / samples;
  out.se_mean_stability = mean_se(sum_s, sumsq_s);
  return out;
}

}  // namespace fdslib
