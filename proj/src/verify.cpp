#include "fdslib/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "fdslib/constructions.hpp"
#include "fdslib/counting.hpp"
#include "fdslib/digraph_algorithms.hpp"
#include "fdslib/extremal.hpp"
#include "fdslib/generate.hpp"
#include "fdslib/sampling.hpp"
#include "fdslib/scan.hpp"

namespace fdslib {

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

Digraph cycle_digraph(int n) {
  Digraph d(n);
  for (int i = 1; i < n; ++i) d.add_arc(i, i + 1);
  if (n >= 2) d.add_arc(n, 1);
  return d;
}

Digraph out_star(int n) {
  Digraph d(n);
  for (int v = 2; v <= n; ++v) d.add_arc(1, v);
  return d;
}

std::vector<Digraph> loopless_upto(int max_n) {
  std::vector<Digraph> all;
  for (int n = 1; n <= max_n; ++n) {
    auto batch = generate_small_digraphs(n, /*loopless=*/true);
    all.insert(all.end(), batch.begin(), batch.end());
  }
  return all;
}

ScanStats full_scan(const Fds& f, const Budget& budget) {
  ScanOptions opts;
  opts.budget = budget;
  return scan_states(f, opts);
}

// ---- criteria ----

Outcome crit_kn_exact(int, const Budget& budget) {
  Outcome out;
  const std::pair<int, int> cases[] = {{2, 2}, {3, 2}, {2, 3}};
  for (auto [n, q] : cases) {
    Digraph kn(n);
    for (int u = 1; u <= n; ++u)
      for (int v = 1; v <= n; ++v)
        if (u != v) kn.add_arc(u, v);
    const int want_s = n / q;
    const int want_i = n - (n + q - 1) / q;
    auto rs = extremal(kn, q, ExtremalKind::StabilityStrict, budget);
    auto ri = extremal(kn, q, ExtremalKind::InstabilityStrict, budget);
    if (rs.value != want_s)
      out.fail("s[K_" + std::to_string(n) + "," + std::to_string(q) + "] = " +
               std::to_string(rs.value) + ", expected " + std::to_string(want_s));
    if (ri.value != want_i)
      out.fail("i[K_" + std::to_string(n) + "," + std::to_string(q) + "] = " +
               std::to_string(ri.value) + ", expected " + std::to_string(want_i));
    auto cert = complete_graph_fn(n, q);
    auto stats = full_scan(cert.fds, budget);
    if (interaction_graph(cert.fds) != kn)
      out.fail("complete_graph_fn graph mismatch");
    if (n - stats.max_dh != want_s || stats.min_dh != want_i)
      out.fail("complete_graph_fn attains s=" +
               std::to_string(n - stats.max_dh) + " i=" +
               std::to_string(stats.min_dh));
  }
  if (out.pass) out.note("3 (n,q) cases exact, constructions attain both");
  return out;
}

Outcome crit_loopfull_stability(int, const Budget& budget) {
  Outcome out;
  int checked = 0;
  for (const auto& d : loopless_upto(3)) {
    const int n = d.vertex_count();
    const int q = std::max(2, n - static_cast<int>(sources(d).size()));
    if (q > 3) continue;
    auto report = loopfull_stability_search(d, q, budget);
    int want = n - sigma(d);
    if (report.value != want) {
      out.fail("search value " + std::to_string(report.value) + " != n-sigma " +
               std::to_string(want) + " on " + std::to_string(d.hash()));
      return out;
    }
    ++checked;
  }
  int constructed = 0;
  for (int i = 0; i < 40; ++i) {
    int n = 2 + (i % 5);  // 2..6
    Digraph d = random_digraph(n, /*loopless=*/true, 2000 + i);
    const int q = std::max(2, n - static_cast<int>(sources(d).size()));
    auto cert = loopfull_stability_fn(d, q);
    auto check = verify_certificate(cert, budget);
    int want = n - sigma(d);
    if (!check.graph_ok || check.measured != want) {
      out.fail("construction failed on random graph seed " +
               std::to_string(2000 + i));
      return out;
    }
    ++constructed;
  }
  out.note(std::to_string(checked) + " exhaustive searches equal n-sigma(D), " +
           std::to_string(constructed) + " random constructions exact");
  return out;
}

Outcome crit_loopfull_instability(int max_n, const Budget& budget) {
  Outcome out;
  int checked = 0;
  for (const auto& d : loopless_upto(std::min(max_n, 4))) {
    auto cert = loopfull_instability_fn(d, 3);
    auto stats = full_scan(cert.fds, budget);
    if (stats.min_dh != d.vertex_count()) {
      out.fail("i(f) = " + std::to_string(stats.min_dh) + " != n on graph " +
               std::to_string(d.hash()));
      return out;
    }
    if (interaction_graph(cert.fds) != cert.claimed_graph) {
      out.fail("interaction graph != D-with-loops on graph " +
               std::to_string(d.hash()));
      return out;
    }
    ++checked;
  }
  out.note(std::to_string(checked) + " graphs, i(f) = n and G(f) = D° on all");
  return out;
}

Outcome crit_outstar_tightness(int, const Budget& budget) {
  Outcome out;
  Digraph d = out_star(4);
  auto report = loopfull_stability_search(d, 2, budget);
  if (report.value != 2)
    out.fail("s[outstar4°,2] = " + std::to_string(report.value) +
             ", expected n-2 = 2");
  else
    out.note("s[D°,2] = 2 = n-2 for the out-star on 4 vertices");
  return out;
}

Outcome crit_halfn_pipeline(int max_n, const Budget& budget) {
  Outcome out;
  int checked = 0;
  auto check_one = [&](const Digraph& d, u64 seed) -> bool {
    auto cert = halfn_stable_fn(d, seed);
    if (interaction_graph(cert.fds) != cert.claimed_graph) {
      out.fail("G(f) != D° (graph hash " + std::to_string(d.hash()) + ")");
      return false;
    }
    auto stats = full_scan(cert.fds, budget);
    int s = d.vertex_count() - stats.max_dh;
    if (2 * s < d.vertex_count()) {
      out.fail("s(f) = " + std::to_string(s) + " < n/2 (graph hash " +
               std::to_string(d.hash()) + ")");
      return false;
    }
    ++checked;
    return true;
  };
  for (const auto& d : generate_small_digraphs(std::min(max_n, 4), true))
    if (!check_one(d, 7)) return out;
  for (int i = 0; i < 200; ++i) {
    Digraph d = random_digraph(5 + (i % 6), true, 3000 + i);
    if (!check_one(d, 9000 + i)) return out;
  }
  out.note(std::to_string(checked) + " graphs, G(f) = D° and s(f) >= n/2");
  return out;
}

Outcome crit_monotone_pipeline(int max_n, const Budget& budget) {
  Outcome out;
  int checked = 0, logged = 0;
  auto check_one = [&](const Digraph& d, u64 seed) -> bool {
    auto cert = monotone_halfn_fn(d, seed);
    const int n = d.vertex_count();
    if (!is_monotone(cert.fds)) {
      out.fail("not monotone (graph hash " + std::to_string(d.hash()) + ")");
      return false;
    }
    if (interaction_graph(cert.fds) != cert.claimed_graph) {
      out.fail("G(f) != D° (graph hash " + std::to_string(d.hash()) + ")");
      return false;
    }
    auto stats = full_scan(cert.fds, budget);
    int s = n - stats.max_dh;
    int floor_sum = 0;
    auto comps = weakly_connected_components(d);
    for (const auto& comp : comps) floor_sum += static_cast<int>(comp.size()) / 2;
    if (s < floor_sum) {
      out.fail("s(f) = " + std::to_string(s) + " < component floor sum " +
               std::to_string(floor_sum));
      return false;
    }
    if (comps.size() <= 1 && s < n / 2) {
      out.fail("connected input with s(f) = " + std::to_string(s) + " < " +
               std::to_string(n / 2));
      return false;
    }
    // Open question bookkeeping: disconnected inputs may fall below floor(n/2).
    if (comps.size() > 1 && s < n / 2) ++logged;
    ++checked;
    return true;
  };
  for (const auto& d : generate_small_digraphs(std::min(max_n, 4), true))
    if (!check_one(d, 7)) return out;
  for (int i = 0; i < 200; ++i) {
    Digraph d = random_digraph(5 + (i % 6), true, 3000 + i);
    if (!check_one(d, 9000 + i)) return out;
  }
  out.note(std::to_string(checked) + " graphs monotone with G(f) = D°; " +
           std::to_string(logged) +
           " disconnected inputs below floor(n/2) (reported, not failed)");
  return out;
}

Outcome crit_bm(int, const Budget& budget) {
  Outcome out;
  for (int m = 1; m <= 3; ++m) {
    auto report = monotone_optimal_stability(bm_graph(m), budget);
    if (report.value != m) {
      out.fail("s_+[B_" + std::to_string(m) + "°,2] = " +
               std::to_string(report.value) + ", expected " + std::to_string(m));
    }
  }
  if (out.pass) out.note("s_+[B_m°,2] = m for m in {1,2,3}");
  return out;
}

Outcome crit_kmm(int, const Budget& budget) {
  Outcome out;
  auto cert = kmm_stability_fn(2);
  auto check = verify_certificate(cert, budget);
  if (!check.graph_ok) out.fail("kmm function graph != K°_{2,2}");
  if (check.measured != 3)
    out.fail("kmm s(f) = " + std::to_string(check.measured) + ", expected 3");
  auto report = monotone_optimal_stability(kmm_graph(2), budget);
  if (report.value != 2)
    out.fail("s_+[K°_{2,2},2] = " + std::to_string(report.value) +
             ", expected 2");
  if (out.pass) out.note("s[K°_{2,2},2] = 3 attained, monotone optimum 2");
  return out;
}

Outcome crit_near_biclique(int max_n, const Budget& budget) {
  Outcome out;
  int witnessed = 0, checked = 0;
  for (const auto& d : loopless_upto(std::min(max_n, 4))) {
    const int n = d.vertex_count();
    auto witness = is_near_biclique(d, budget);
    auto report = monotone_optimal_stability(d, budget);
    bool reaches = report.value == n - 1;
    if (reaches != witness.has_value()) {
      out.fail("equivalence fails on graph hash " + std::to_string(d.hash()) +
               " (s_+ = " + std::to_string(report.value) + ", witness " +
               (witness ? "yes" : "no") + ")");
      return out;
    }
    if (witness) {
      auto cert = near_biclique_fn(d, *witness);
      auto check = verify_certificate(cert, budget);
      if (!check.graph_ok || check.measured != n - 1) {
        out.fail("witnessed construction does not attain n-1 on graph hash " +
                 std::to_string(d.hash()));
        return out;
      }
      ++witnessed;
    }
    ++checked;
  }
  out.note(std::to_string(checked) + " graphs, equivalence exact, " +
           std::to_string(witnessed) + " witnessed attainers verified");
  return out;
}

Outcome crit_positive_stability(int, const Budget& budget) {
  Outcome out;
  // Brute force over F(2,2): the full graph with loops on 2 vertices.
  Digraph full(2);
  for (int u = 1; u <= 2; ++u)
    for (int v = 1; v <= 2; ++v) full.add_arc(u, v);
  FunctionSpace space(full, 2, false, budget);
  u64 brute = 0;
  std::optional<kernels::CompiledFds> c;
  space.for_each([&](const Fds& f, u64) {
    if (!c) c = kernels::CompiledFds::compile(f, budget);
    auto r = scan_precompiled(*c, kernels::ScanAborts{});
    if (f.n - r.max_dh > 0) ++brute;
    return true;
  });
  if (positive_stability_count(2, 2) != 81 || brute != 81)
    out.fail("count(2,2) = " + positive_stability_count(2, 2).str() +
             ", brute " + std::to_string(brute) + ", expected 81");
  if (positive_stability_count(1, 2) != 1 || positive_stability_count(1, 3) != 1)
    out.fail("n=1 cases differ from 1");
  if (out.pass) out.note("count(2,2) = 81 = brute force; n=1 cases equal 1");
  return out;
}

// Criteria 11 and 12 share the sweep over all digraphs on <= 3 vertices.
struct SweepInstance {
  Digraph d;
  FixCounts counts;
};

std::vector<SweepInstance> fix_sweep(const Budget& budget) {
  std::vector<SweepInstance> out;
  Budget sweep_budget = budget;
  sweep_budget.max_function_visits = u64(1) << 20;
  for (int n = 1; n <= 3; ++n)
    for (auto& d : generate_small_digraphs(n, /*loopless=*/false)) {
      try {
        FixCounts fc = fix_class_counts(d, 2, /*strict=*/true, sweep_budget);
        out.push_back({std::move(d), std::move(fc)});
      } catch (const BudgetError&) {
        // Not enumerable at the sweep budget; outside the criterion's scope.
      }
    }
  return out;
}

Outcome crit_average_fixed_points(int, const Budget& budget) {
  Outcome out;
  auto sweep = fix_sweep(budget);
  for (const auto& inst : sweep) {
    const int n = inst.d.vertex_count();
    if (inst.counts.fix_total != inst.counts.space_size) {
      out.fail("sum |Fix| != |F[D,2]| on graph hash " +
               std::to_string(inst.d.hash()));
      return out;
    }
    if (2 * inst.counts.stability_total >
        static_cast<u64>(n) * inst.counts.space_size) {
      out.fail("mean stability above n/q on graph hash " +
               std::to_string(inst.d.hash()));
      return out;
    }
  }
  out.note(std::to_string(sweep.size()) +
           " enumerable instances: sum |Fix| = |F| and mean s <= n/q");
  return out;
}

Outcome crit_p0_bound(int, const Budget& budget) {
  Outcome out;
  auto sweep = fix_sweep(budget);
  for (const auto& inst : sweep) {
    if (inst.counts.p0 > p0_upper_bound(inst.d, 2, budget)) {
      out.fail("p0 exceeds 1 - q^-tau on graph hash " +
               std::to_string(inst.d.hash()));
      return out;
    }
  }
  // Tightness: single cycles and the disjoint union of two 2-cycles.
  auto expect_equal = [&](const Digraph& d, int nu) {
    FixCounts fc = fix_class_counts(d, 2, true, budget);
    Rational want = Rational((u64(1) << nu) - 1, u64(1) << nu);
    if (fc.p0 != want)
      out.fail("p0 = " + rational_string(fc.p0) + " != " +
               rational_string(want) + " on disjoint-cycle instance");
  };
  expect_equal(cycle_digraph(2), 1);
  expect_equal(cycle_digraph(3), 1);
  Digraph two_cycles(4);
  two_cycles.add_arc(1, 2);
  two_cycles.add_arc(2, 1);
  two_cycles.add_arc(3, 4);
  two_cycles.add_arc(4, 3);
  expect_equal(two_cycles, 2);
  if (out.pass)
    out.note(std::to_string(sweep.size()) +
             " instances below the bound; equality on C2, C3, C2+C2");
  return out;
}

Outcome crit_cycle_formulas(int, const Budget& budget) {
  Outcome out;
  const std::pair<int, int> cases[] = {{2, 2}, {3, 2}, {2, 3}, {3, 3}};
  for (auto [n, q] : cases) {
    FixCounts fc = fix_class_counts(cycle_digraph(n), q, /*strict=*/false,
                                    budget);
    if (cycle_p0_formula(n, q) != fc.p0) {
      out.fail("p0 formula != enumeration at n=" + std::to_string(n) +
               " q=" + std::to_string(q));
      return out;
    }
    if (cycle_p1_formula(n, q) != fc.p1) {
      out.fail("p1 formula != enumeration at n=" + std::to_string(n) +
               " q=" + std::to_string(q));
      return out;
    }
    // Inclusion-exclusion identity against the code counts.
    Rational alternating = 0;
    BigInt qn = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n));
    BigInt power = 1;
    for (int t = 1; t <= q; ++t) {
      power *= qn;
      Rational term = Rational(code_count(t, n, q), power);
      alternating += (t % 2 == 1) ? term : -term;
    }
    if (alternating != 1 - cycle_p0_formula(n, q)) {
      out.fail("code-count identity fails at n=" + std::to_string(n) +
               " q=" + std::to_string(q));
      return out;
    }
  }
  const double e1 = std::exp(-1.0);
  for (int n = 2; n <= 6; ++n) {
    if (std::abs(cycle_p0_float(n, 10000) - e1) > 1e-3) {
      out.fail("float p0 off e^-1 at n=" + std::to_string(n));
      return out;
    }
  }
  out.note("4 rational identities, code-count identity, float p0 near e^-1");
  return out;
}

Outcome crit_alphabet_doubling(int, const Budget& budget) {
  Outcome out;
  Digraph c3 = cycle_digraph(3);
  for (int i = 0; i < 100; ++i) {
    Fds f = sample_uniform(c3, 2, /*strict=*/false, 4000 + i, budget);
    Fds g = double_alphabet(f, c3);
    auto sf = full_scan(f, budget);
    auto sg = full_scan(g, budget);
    if (sg.min_dh < sf.min_dh) {
      out.fail("i(g) < i(f) at seed " + std::to_string(4000 + i));
      return out;
    }
    if (interaction_graph(g) != c3) {
      out.fail("G(g) != C3 at seed " + std::to_string(4000 + i));
      return out;
    }
  }
  out.note("100 seeded doublings: i(g) >= i(f), G(g) = C3");
  return out;
}

Outcome crit_monte_carlo(int, const Budget& budget) {
  Outcome out;
  const double e1 = std::exp(-1.0);
  auto full = monte_carlo_stats(std::nullopt, 2, 50, false, 100000, 11, budget);
  if (std::abs(full.mean_instability - e1) > 0.05)
    out.fail("mean instability " + std::to_string(full.mean_instability) +
             " not within 0.05 of 1/e");
  Digraph loops_only(2);
  loops_only.add_arc(1, 1);
  loops_only.add_arc(2, 2);
  auto lo = monte_carlo_stats(loops_only, 2, 50, true, 100000, 12, budget);
  double target = loopsonly_limits(2).p0;
  double band = 3 * std::max(lo.se_p0, 1e-9);
  if (std::abs(lo.p0 - target) > band)
    out.fail("loops-only p0 " + std::to_string(lo.p0) + " not within 3se of " +
             std::to_string(target));
  if (out.pass) {
    std::ostringstream s;
    s << "mean i = " << full.mean_instability << " (target " << e1
      << "), loops-only p0 = " << lo.p0 << " (target " << target << ")";
    out.note(s.str());
  }
  return out;
}

Outcome crit_degree_family(int, const Budget& budget) {
  Outcome out;
  auto cert = degree_family(2, 1, 2);
  auto stats = full_scan(cert.fds, budget);
  if (stats.min_dh != 2 || stats.max_dh != 2)
    out.fail("dH(x,f(x)) not constant 2 over the 16 states");
  const int n = cert.fds.n;
  int s = n - stats.max_dh;
  if (s != n - 2) out.fail("s(f) != n - t");
  if (interaction_graph(cert.fds) != cert.claimed_graph)
    out.fail("interaction graph differs from the certified one");
  Digraph loopfull = add_loops(degree_family_graph(2, 1, 2));
  double lhs = std::pow(2.0, loopfull.max_in_degree());
  double rhs = static_cast<double>(n) / (n - s);
  if (lhs < rhs) out.fail("degree inequality violated");
  if (out.pass) out.note("constant displacement t=2, s = n-t, degree bound");
  return out;
}

struct Criterion {
  std::string name;
  std::function<Outcome(int, const Budget&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"kn-exact", crit_kn_exact},
      {"loopfull-stability", crit_loopfull_stability},
      {"loopfull-instability", crit_loopfull_instability},
      {"outstar-tightness", crit_outstar_tightness},
      {"halfn-pipeline", crit_halfn_pipeline},
      {"monotone-pipeline", crit_monotone_pipeline},
      {"bm-monotone", crit_bm},
      {"kmm", crit_kmm},
      {"near-biclique", crit_near_biclique},
      {"positive-stability-count", crit_positive_stability},
      {"average-fixed-points", crit_average_fixed_points},
      {"p0-bound", crit_p0_bound},
      {"cycle-formulas", crit_cycle_formulas},
      {"alphabet-doubling", crit_alphabet_doubling},
      {"monte-carlo-limits", crit_monte_carlo},
      {"degree-family", crit_degree_family},
  };
  return list;
}

}  // namespace

const std::vector<std::string>& acceptance_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : criteria()) out.push_back(c.name);
    return out;
  }();
  return names;
}

std::vector<CriterionResult> run_acceptance(const std::string& suite,
                                            int max_n, std::ostream& log,
                                            const Budget& budget) {
  std::vector<CriterionResult> results;
  bool matched = false;
  for (const auto& c : criteria()) {
    if (suite != "all" && suite != c.name) continue;
    matched = true;
    CriterionResult r;
    r.name = c.name;
    auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = c.run(max_n, budget);
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    log << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.seconds
        << "s): " << r.detail << "\n";
    results.push_back(std::move(r));
  }
  if (!matched) throw DomainError("unknown suite: " + suite);
  return results;
}

}  // namespace fdslib
