#pragma once

#include <string>
#include <vector>

#include "fdslib/digraph.hpp"
#include "fdslib/numeric.hpp"

namespace fdslib {

// |{f in F(n,q) : s(f) > 0}|. The closed form q^{nq^n} [1-(1-1/q)^n]^{q^n}
// collapses to (q^n - (q-1)^n)^{q^n}, which is computed exactly. `bit_cap`
// bounds the result size.
BigInt positive_stability_count(int n, int q, u64 bit_cap = u64(1) << 22);

// Number of codes of minimum distance n and cardinality t in [q]^n:
// (1/t!) [q (q-1) .. (q-t+1)]^n; zero when t > q so sums may overrun freely.
BigInt code_count(int t, int n, int q);

// p0(C_n, q) = sum_{t=0}^q (-1)^t/t! [(1-1/q)..(1-(t-1)/q)]^n, exact.
Rational cycle_p0_formula(int n, int q);

// p1(C_n, q) = sum_{s=0}^q (-1)^s/s! [(1-1/q)..(1-s/q)]^n, exact.
Rational cycle_p1_formula(int n, int q);

// Floating-point evaluations for large q; terms below 1e-18 are dropped
// (the series alternates with rapidly decaying terms).
double cycle_p0_float(int n, int q);
double cycle_p1_float(int n, int q);

// 1 - q^{-tau(D)}, exact.
Rational p0_upper_bound(const Digraph& d, int q,
                        const Budget& budget = default_budget());

// Large-q limits for the loops-only graph on n vertices, as floating targets
// for Monte Carlo comparison.
struct LoopsOnlyLimits {
  double p0;
  double p1;
  double p2;
  double mean_instability;
};
LoopsOnlyLimits loopsonly_limits(int n);

// Per-q fixed-point class proportions and mean instability for one digraph,
// exact where the strict space is enumerable and Monte Carlo otherwise, with
// finite-q consistency notes against the acyclicity equivalences.
struct PropertyRow {
  int q = 0;
  bool exact = false;
  double p0 = 0, p1 = 0, p2 = 0;
  double mean_instability = 0;
  std::string p0_exact, p1_exact, p2_exact;  // "num/den" when exact
};

struct PropertyReport {
  bool acyclic = false;
  std::vector<PropertyRow> rows;
  bool acyclic_consistency_ok = true;  // p0 = p2 = 0 at every exact q iff acyclic
};

PropertyReport property_report(const Digraph& d, const std::vector<int>& qs,
                               u64 samples, u64 seed,
                               const Budget& budget = default_budget());

}  // namespace fdslib
