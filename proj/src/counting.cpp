#include "fdslib/counting.hpp"

#include <cmath>

#include "fdslib/digraph_algorithms.hpp"
#include "fdslib/extremal.hpp"
#include "fdslib/sampling.hpp"

namespace fdslib {

BigInt positive_stability_count(int n, int q, u64 bit_cap) {
  if (n < 1 || q < 2) throw DomainError("positive_stability_count: bad n or q");
  BigInt qn = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n));
  BigInt base = qn - boost::multiprecision::pow(BigInt(q - 1),
                                                static_cast<unsigned>(n));
  // Result has about q^n * log2(base) bits.
  double bits = static_cast<double>(qn.convert_to<double>()) *
                (boost::multiprecision::msb(base) + 1);
  if (!(bits < static_cast<double>(bit_cap)))
    throw BudgetError("positive_stability_count: result exceeds size cap");
  return boost::multiprecision::pow(base, qn.convert_to<unsigned>());
}

BigInt code_count(int t, int n, int q) {
  if (t < 1 || n < 1 || q < 2) throw DomainError("code_count: bad arguments");
  if (t > q) return 0;
  BigInt falling = 1;
  BigInt factorial = 1;
  for (int j = 0; j < t; ++j) {
    falling *= q - j;
    factorial *= j + 1;
  }
  return boost::multiprecision::pow(falling, static_cast<unsigned>(n)) /
         factorial;
}

namespace {

Rational rational_pow(const Rational& r, int n) {
  Rational out = 1;
  for (int i = 0; i < n; ++i) out *= r;
  return out;
}

}  // namespace

Rational cycle_p0_formula(int n, int q) {
  if (n < 2 || q < 2) throw DomainError("cycle_p0_formula: need n,q >= 2");
  Rational sum = 0;
  Rational prod = 1;  // prod_{j=1}^{t-1} (1 - j/q)
  BigInt factorial = 1;
  for (int t = 0; t <= q; ++t) {
    if (t >= 1) factorial *= t;
    if (t >= 2) prod *= Rational(q - (t - 1), q);
    Rational term = rational_pow(prod, n) / Rational(factorial);
    sum += (t % 2 == 0) ? term : -term;
  }
  return sum;
}

Rational cycle_p1_formula(int n, int q) {
  if (n < 2 || q < 2) throw DomainError("cycle_p1_formula: need n,q >= 2");
  Rational sum = 0;
  Rational prod = 1;  // prod_{j=1}^{s} (1 - j/q)
  BigInt factorial = 1;
  for (int s = 0; s <= q; ++s) {
    if (s >= 1) {
      factorial *= s;
      prod *= Rational(q - s, q);  // reaches zero at s = q
    }
    Rational term = rational_pow(prod, n) / Rational(factorial);
    sum += (s % 2 == 0) ? term : -term;
  }
  return sum;
}

double cycle_p0_float(int n, int q) {
  if (n < 2 || q < 2) throw DomainError("cycle_p0_float: need n,q >= 2");
  double sum = 0;
  double a = 1;  // P_t^n / t!
  for (int t = 0; t <= q; ++t) {
    sum += (t % 2 == 0) ? a : -a;
    if (a < 1e-18) break;
    a *= std::pow(1.0 - static_cast<double>(t) / q, n) / (t + 1);
  }
  return sum;
}

double cycle_p1_float(int n, int q) {
  if (n < 2 || q < 2) throw DomainError("cycle_p1_float: need n,q >= 2");
  double sum = 0;
  double a = 1;  // P'_s^n / s!
  for (int s = 0; s <= q; ++s) {
    sum += (s % 2 == 0) ? a : -a;
    if (a < 1e-18) break;
    a *= std::pow(1.0 - static_cast<double>(s + 1) / q, n) / (s + 1);
  }
  return sum;
}

Rational p0_upper_bound(const Digraph& d, int q, const Budget& budget) {
  if (q < 2) throw DomainError("p0_upper_bound: q >= 2 required");
  int tau = feedback_number(d, budget);
  BigInt denom = boost::multiprecision::pow(BigInt(q),
                                            static_cast<unsigned>(tau));
  return Rational(denom - 1, denom);
}

LoopsOnlyLimits loopsonly_limits(int n) {
  if (n < 1) throw DomainError("loopsonly_limits: n >= 1 required");
  const double e1 = std::exp(-1.0);
  LoopsOnlyLimits l;
  l.p0 = 1.0 - std::pow(1.0 - e1, n);
  l.p1 = std::exp(static_cast<double>(-n));
  l.p2 = std::pow(1.0 - e1, n) - std::exp(static_cast<double>(-n));
  l.mean_instability = n * e1;
  return l;
}

PropertyReport property_report(const Digraph& d, const std::vector<int>& qs,
                               u64 samples, u64 seed, const Budget& budget) {
  PropertyReport report;
  report.acyclic = is_acyclic(d);
  for (int q : qs) {
    PropertyRow row;
    row.q = q;
    bool enumerable = true;
    try {
      FixCounts fc = fix_class_counts(d, q, /*strict=*/true, budget);
      row.exact = true;
      row.p0 = fc.p0.convert_to<double>();
      row.p1 = fc.p1.convert_to<double>();
      row.p2 = fc.p2.convert_to<double>();
      row.p0_exact = rational_string(fc.p0);
      row.p1_exact = rational_string(fc.p1);
      row.p2_exact = rational_string(fc.p2);
      // Mean instability over the strict space, exact arithmetic in doubles:
      // instability is 0/1-heavy only for cycles, so recompute by scan.
      double total = 0;
      FunctionSpace space(d, q, true, budget);
      std::optional<kernels::CompiledFds> c;
      space.for_each([&](const Fds& f, u64) {
        if (!c) c = kernels::CompiledFds::compile(f, budget);
        auto r = scan_precompiled(*c, kernels::ScanAborts{});
        total += r.min_dh;
        return true;
      });
      row.mean_instability = total / static_cast<double>(space.size());
      if (report.acyclic && (fc.f0 != 0 || fc.f2 != 0))
        report.acyclic_consistency_ok = false;
      if (!report.acyclic && fc.f0 == 0)
        report.acyclic_consistency_ok = false;
    } catch (const BudgetError&) {
      enumerable = false;
    }
    if (!enumerable) {
      MonteCarloStats mc = monte_carlo_stats(d, d.vertex_count(), q,
                                             /*strict=*/true, samples,
                                             seed ^ static_cast<u64>(q),
                                             budget);
      row.exact = false;
      row.p0 = mc.p0;
      row.p1 = mc.p1;
      row.p2 = mc.p2;
      row.mean_instability = mc.mean_instability;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace fdslib
