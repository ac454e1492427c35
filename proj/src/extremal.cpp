#include "fdslib/extremal.hpp"

#include <algorithm>
#include <thread>

#include "fdslib/constructions.hpp"
#include "fdslib/digraph_algorithms.hpp"

namespace fdslib {

using kernels::CompiledFds;
using kernels::ScanAborts;

const char* extremal_kind_name(ExtremalKind kind) {
  switch (kind) {
    case ExtremalKind::StabilitySubset: return "s(D,q)";
    case ExtremalKind::StabilityStrict: return "s[D,q]";
    case ExtremalKind::InstabilitySubset: return "i(D,q)";
    case ExtremalKind::InstabilityStrict: return "i[D,q]";
    case ExtremalKind::MonotoneStability: return "s_+[D°,2]";
  }
  return "?";
}

namespace {

struct SweepBest {
  int value = -1;
  u64 index = 0;
  u64 state = 0;
  bool found = false;
};

// One worker's pass over [lo,hi). Prune thresholds always compare against the
// worker's own best, which is sound: a pruned function cannot strictly beat
// the value it was pruned at.
SweepBest sweep_range(const FunctionSpace& space, bool want_stability,
                      u64 lo, u64 hi, const Budget& budget,
                      std::optional<int> stop_at) {
  SweepBest best;
  std::optional<CompiledFds> c;
  space.for_each_range(lo, hi, [&](const Fds& f, u64 idx) {
    if (!c) c = CompiledFds::compile(f, budget);
    ScanAborts aborts;
    if (want_stability)
      aborts.max_dh_ge = f.n - best.value;  // dh >= n-best  <=>  s(f) <= best
    else
      aborts.min_dh_le = best.value;        // dh <= best    <=>  i(f) <= best
    auto r = scan_precompiled(*c, aborts);
    if (!r.aborted) {
      int value = want_stability ? f.n - r.max_dh : r.min_dh;
      if (value > best.value || !best.found) {
        best.value = value;
        best.index = idx;
        best.state = want_stability ? r.max_state : r.min_state;
        best.found = true;
      }
      if (stop_at && best.value >= *stop_at) return false;
    }
    return true;
  });
  return best;
}

}  // namespace

ExtremalReport extremal(const Digraph& d, int q, ExtremalKind kind,
                        const Budget& budget, std::optional<int> stop_at) {
  bool want_stability;
  bool strict;
  switch (kind) {
    case ExtremalKind::StabilitySubset: want_stability = true; strict = false; break;
    case ExtremalKind::StabilityStrict: want_stability = true; strict = true; break;
    case ExtremalKind::InstabilitySubset: want_stability = false; strict = false; break;
    case ExtremalKind::InstabilityStrict: want_stability = false; strict = true; break;
    default:
      throw DomainError("extremal: use monotone_optimal_stability for s_+");
  }
  FunctionSpace space(d, q, strict, budget);
  const u64 total = space.size();

  int workers = std::max(1, budget.workers);
  SweepBest best;
  if (workers == 1 || total < 4096 || stop_at) {
    best = sweep_range(space, want_stability, 0, total, budget, stop_at);
  } else {
    std::vector<SweepBest> partial(workers);
    std::vector<std::thread> pool;
    u64 chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        u64 lo = w * chunk, hi = std::min(total, lo + chunk);
        if (lo < hi)
          partial[w] = sweep_range(space, want_stability, lo, hi, budget,
                                   std::nullopt);
      });
    for (auto& t : pool) t.join();
    for (const auto& p : partial) {
      if (!p.found) continue;
      if (!best.found || p.value > best.value ||
          (p.value == best.value && p.index < best.index))
        best = p;
    }
  }
  if (!best.found) throw std::logic_error("extremal: empty function space");

  ExtremalReport report;
  report.kind = kind;
  report.value = best.value;
  report.witness_fn = space.materialize(best.index);
  report.witness_state =
      state_from_rank(best.state, space.vertex_count(), space.alphabet());
  report.space_size = total;
  return report;
}

// ---- s[D°,q] via single-miss patterns ----

ExtremalReport loopfull_stability_search(const Digraph& d, int q,
                                         const Budget& budget) {
  if (d.has_any_loop())
    throw DomainError("loopfull_stability_search: D must be loopless");
  if (q < 2 || q > kMaxAlphabet)
    throw DomainError("loopfull_stability_search: bad alphabet");
  const int n = d.vertex_count();
  const u64 states = checked_pow(static_cast<u64>(q),
                                 static_cast<unsigned>(n),
                                 budget.max_state_scans, "state space");
  std::vector<int> src = sources(d);
  std::vector<char> is_src(n + 1, 0);
  for (int s : src) is_src[s] = 1;
  std::vector<int> ns;
  for (int v = 1; v <= n; ++v)
    if (!is_src[v]) ns.push_back(v);

  // Support ranks of every state on each closed in-neighbourhood.
  std::vector<std::vector<int>> closed(ns.size());
  std::vector<u64> option_count(ns.size());
  u64 space = 1;
  for (size_t i = 0; i < ns.size(); ++i) {
    closed[i] = d.in_neighbours(ns[i]);
    closed[i].insert(
        std::lower_bound(closed[i].begin(), closed[i].end(), ns[i]), ns[i]);
    option_count[i] =
        checked_pow(static_cast<u64>(q),
                    static_cast<unsigned>(closed[i].size()),
                    budget.max_function_visits, "miss pattern space");
    if (space > budget.max_function_visits / option_count[i])
      throw BudgetError("miss pattern space exceeds budget");
    space *= option_count[i];
  }

  std::vector<std::vector<u64>> sr(ns.size(), std::vector<u64>(states));
  {
    StateVector x = state_from_rank(0, n, q);
    for (u64 rank = 0; rank < states; ++rank) {
      for (size_t i = 0; i < ns.size(); ++i)
        sr[i][rank] = support_rank(x.coords, closed[i], q);
      for (int p = 0; p < n; ++p) {
        if (++x.coords[p] < q) break;
        x.coords[p] = 0;
      }
    }
  }

  std::vector<u64> z(ns.size(), 0);
  int best_value = -1;
  std::vector<u64> best_z;
  u64 best_state = 0;
  for (u64 cand = 0; cand < space; ++cand) {
    int worst = 0;
    u64 worst_state = 0;
    for (u64 rank = 0; rank < states; ++rank) {
      int misses = 0;
      for (size_t i = 0; i < ns.size(); ++i) misses += sr[i][rank] == z[i];
      if (misses > worst) {
        worst = misses;
        worst_state = rank;
      }
    }
    if (n - worst > best_value) {
      best_value = n - worst;
      best_z = z;
      best_state = worst_state;
    }
    for (size_t i = ns.size(); i-- > 0;) {
      if (++z[i] < option_count[i]) break;
      z[i] = 0;
    }
  }

  // Materialize the winning function: identity at sources, single-miss local
  // at every non-source.
  Fds f;
  f.n = n;
  f.q = q;
  f.locals.resize(n);
  for (int v = 1; v <= n; ++v) {
    if (is_src[v]) {
      f.locals[v - 1] = identity_fds(1, q).locals[0];
      f.locals[v - 1].support = {v};
      continue;
    }
    size_t i = std::lower_bound(ns.begin(), ns.end(), v) - ns.begin();
    auto& lf = f.locals[v - 1];
    lf.support = closed[i];
    lf.table.resize(option_count[i]);
    size_t self_slot =
        std::lower_bound(closed[i].begin(), closed[i].end(), v) -
        closed[i].begin();
    u64 self_stride = 1;
    for (size_t j = 0; j < self_slot; ++j) self_stride *= q;
    for (u64 idx = 0; idx < lf.table.size(); ++idx) {
      value_t own = static_cast<value_t>((idx / self_stride) % q);
      lf.table[idx] = idx == best_z[i]
                          ? static_cast<value_t>((own + 1) % q)
                          : own;
    }
  }

  ExtremalReport report;
  report.kind = ExtremalKind::StabilityStrict;
  report.value = best_value;
  report.witness_fn = std::move(f);
  report.witness_state = state_from_rank(best_state, n, q);
  report.space_size = space;
  return report;
}

// ---- s_+[D°,2] over phi/psi assignments ----

ExtremalReport monotone_optimal_stability(const Digraph& d,
                                          const Budget& budget) {
  if (d.has_any_loop())
    throw DomainError("monotone_optimal_stability: D must be loopless");
  const int n = d.vertex_count();
  const u64 states = checked_pow(u64(2), static_cast<unsigned>(n),
                                 std::min<u64>(budget.max_state_scans,
                                               u64(1) << 22),
                                 "state space");
  std::vector<int> src = sources(d);
  std::vector<char> is_src(n + 1, 0);
  for (int s : src) is_src[s] = 1;
  std::vector<int> ns;
  for (int v = 1; v <= n; ++v)
    if (!is_src[v]) ns.push_back(v);
  const size_t k = ns.size();
  if (k > 40) throw BudgetError("monotone assignment space exceeds budget");
  const u64 assignments = u64(1) << k;
  if (assignments > budget.max_function_visits ||
      states > budget.max_function_visits / std::max<u64>(assignments, 1))
    throw BudgetError("monotone search exceeds budget");

  // Per state: which non-sources would miss as phi, and which as psi.
  std::vector<u64> miss_phi(states, 0), miss_psi(states, 0);
  for (u64 x = 0; x < states; ++x) {
    for (size_t i = 0; i < k; ++i) {
      int v = ns[i];
      bool own = (x >> (v - 1)) & 1;
      bool all_one = true, all_zero = true;
      for (int u : d.in_neighbours(v)) {
        bool bit = (x >> (u - 1)) & 1;
        all_one &= bit;
        all_zero &= !bit;
      }
      if (!own && all_one) miss_phi[x] |= u64(1) << i;
      if (own && all_zero) miss_psi[x] |= u64(1) << i;
    }
  }

  int best_value = -1;
  u64 best_assign = 0, best_state = 0;
  for (u64 a = 0; a < assignments; ++a) {
    int worst = 0;
    u64 worst_state = 0;
    for (u64 x = 0; x < states; ++x) {
      int m = std::popcount((miss_phi[x] & ~a) | (miss_psi[x] & a));
      if (m > worst) {
        worst = m;
        worst_state = x;
      }
    }
    if (n - worst > best_value) {
      best_value = n - worst;
      best_assign = a;
      best_state = worst_state;
    }
  }

  Fds f;
  f.n = n;
  f.q = 2;
  f.locals.resize(n);
  for (int v = 1; v <= n; ++v) {
    if (is_src[v]) {
      f.locals[v - 1] = {{v}, {0, 1}};
      continue;
    }
    size_t i = std::lower_bound(ns.begin(), ns.end(), v) - ns.begin();
    f.locals[v - 1] = ((best_assign >> i) & 1)
                          ? psi_local(v, d.in_neighbours(v))
                          : phi_local(v, d.in_neighbours(v));
  }

  ExtremalReport report;
  report.kind = ExtremalKind::MonotoneStability;
  report.value = best_value;
  report.witness_fn = std::move(f);
  report.witness_state = state_from_rank(best_state, n, 2);
  report.space_size = assignments;
  return report;
}

int monotone_oracle_stability(const Digraph& d, const Budget& budget) {
  if (d.has_any_loop())
    throw DomainError("monotone_oracle_stability: D must be loopless");
  const int n = d.vertex_count();
  checked_pow(u64(2), static_cast<unsigned>(n), budget.max_state_scans,
              "state space");

  // Every monotone table essential on the whole closed in-neighbourhood.
  std::vector<std::vector<std::vector<value_t>>> options(n);
  u64 space = 1;
  for (int v = 1; v <= n; ++v) {
    std::vector<int> support = d.in_neighbours(v);
    support.insert(std::lower_bound(support.begin(), support.end(), v), v);
    const int deg = static_cast<int>(support.size());
    if (deg > 4)
      throw BudgetError("monotone oracle: in-degree above the tiny-instance cap");
    const u64 entries = u64(1) << deg;
    std::vector<value_t> table(entries, 0);
    const u64 count = u64(1) << entries;
    for (u64 rank = 0; rank < count; ++rank) {
      bool monotone = true;
      for (u64 idx = 0; idx < entries && monotone; ++idx)
        for (int j = 0; j < deg; ++j) {
          u64 bit = u64(1) << j;
          if (!(idx & bit) && table[idx] > table[idx | bit]) {
            monotone = false;
            break;
          }
        }
      if (monotone && table_essential_on_all(table, deg, 2))
        options[v - 1].push_back(table);
      for (u64 e = 0; e < entries; ++e) {
        if (++table[e] < 2) break;
        table[e] = 0;
      }
    }
    if (options[v - 1].empty())
      throw std::logic_error("monotone oracle: empty local option set");
    if (space > budget.max_function_visits / options[v - 1].size())
      throw BudgetError("monotone oracle space exceeds budget");
    space *= options[v - 1].size();
  }

  Fds f;
  f.n = n;
  f.q = 2;
  f.locals.resize(n);
  for (int v = 1; v <= n; ++v) {
    std::vector<int> support = d.in_neighbours(v);
    support.insert(std::lower_bound(support.begin(), support.end(), v), v);
    f.locals[v - 1].support = support;
    f.locals[v - 1].table = options[v - 1][0];
  }

  std::optional<CompiledFds> c;
  std::vector<u64> idx(n, 0);
  int best = -1;
  for (u64 visit = 0; visit < space; ++visit) {
    if (!c) c = CompiledFds::compile(f, budget);
    ScanAborts aborts;
    aborts.max_dh_ge = n - best;
    auto r = scan_precompiled(*c, aborts);
    if (!r.aborted) best = n - r.max_dh;
    for (int v = n; v >= 1; --v) {
      auto& lv = idx[v - 1];
      if (++lv < options[v - 1].size()) {
        std::copy(options[v - 1][lv].begin(), options[v - 1][lv].end(),
                  f.locals[v - 1].table.begin());
        break;
      }
      lv = 0;
      std::copy(options[v - 1][0].begin(), options[v - 1][0].end(),
                f.locals[v - 1].table.begin());
    }
  }
  return best;
}

FixCounts fix_class_counts(const Digraph& d, int q, bool strict,
                           const Budget& budget) {
  FunctionSpace space(d, q, strict, budget);
  FixCounts out;
  out.space_size = space.size();

  std::optional<CompiledFds> c;
  space.for_each([&](const Fds& f, u64) {
    if (!c) c = CompiledFds::compile(f, budget);
    auto r = scan_precompiled(*c, ScanAborts{});
    if (r.fixed_count == 0)
      ++out.f0;
    else if (r.fixed_count == 1)
      ++out.f1;
    else
      ++out.f2;
    out.fix_total += r.fixed_count;
    out.stability_total += static_cast<u64>(f.n - r.max_dh);
    return true;
  });

  out.p0 = Rational(out.f0, out.space_size);
  out.p1 = Rational(out.f1, out.space_size);
  out.p2 = Rational(out.f2, out.space_size);
  return out;
}

}  // namespace fdslib
