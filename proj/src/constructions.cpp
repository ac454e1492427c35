#include "fdslib/constructions.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "fdslib/scan.hpp"

namespace fdslib {

namespace {

// Build a table over `support` (sorted) from a per-assignment value function.
template <typename Fn>
LocalFunction make_local(std::vector<int> support, int q, Fn&& value_of) {
  LocalFunction lf;
  lf.support = std::move(support);
  const u64 entries =
      table_size_for(static_cast<int>(lf.support.size()), q, u64(1) << 26);
  lf.table.resize(entries);
  std::vector<value_t> digits(lf.support.size(), 0);
  for (u64 idx = 0; idx < entries; ++idx) {
    lf.table[idx] = static_cast<value_t>(value_of(digits));
    for (size_t j = 0; j < digits.size(); ++j) {
      if (++digits[j] < q) break;
      digits[j] = 0;
    }
  }
  return lf;
}

size_t slot_of(const std::vector<int>& support, int v) {
  auto it = std::lower_bound(support.begin(), support.end(), v);
  if (it == support.end() || *it != v)
    throw std::logic_error("vertex missing from support");
  return static_cast<size_t>(it - support.begin());
}

std::vector<int> sorted_with(std::vector<int> base, int extra) {
  base.insert(std::lower_bound(base.begin(), base.end(), extra), extra);
  return base;
}

LocalFunction identity_local(int v, int q) {
  return make_local({v}, q, [](const std::vector<value_t>& x) { return x[0]; });
}

// Boolean two-input locals used by the lifts; `v` is the vertex itself.
LocalFunction and_local(int v, int u) {
  auto support = std::vector<int>{std::min(u, v), std::max(u, v)};
  size_t sv = slot_of(support, v), su = slot_of(support, u);
  return make_local(support, 2, [sv, su](const std::vector<value_t>& x) {
    return x[sv] & x[su];
  });
}
LocalFunction or_local(int v, int u) {
  auto support = std::vector<int>{std::min(u, v), std::max(u, v)};
  size_t sv = slot_of(support, v), su = slot_of(support, u);
  return make_local(support, 2, [sv, su](const std::vector<value_t>& x) {
    return x[sv] | x[su];
  });
}
LocalFunction ornot_local(int v, int u) {
  auto support = std::vector<int>{std::min(u, v), std::max(u, v)};
  size_t sv = slot_of(support, v), su = slot_of(support, u);
  return make_local(support, 2, [sv, su](const std::vector<value_t>& x) {
    return x[sv] | (1 - x[su]);
  });
}
LocalFunction andnot_local(int v, int u) {
  auto support = std::vector<int>{std::min(u, v), std::max(u, v)};
  size_t sv = slot_of(support, v), su = slot_of(support, u);
  return make_local(support, 2, [sv, su](const std::vector<value_t>& x) {
    return x[sv] & (1 - x[su]);
  });
}

void check_shape(const OutCycleShape& shape) {
  if (shape.cycle.empty()) throw DomainError("out-cycle shape: empty cycle");
  if (shape.pendants.size() != shape.pendant_positions.size() ||
      shape.pendants.size() > shape.cycle.size())
    throw DomainError("out-cycle shape: pendant bookkeeping broken");
  if (shape.cycle.size() == 1 && shape.pendants.size() > 1)
    throw DomainError("out-cycle shape: trivial core allows one pendant");
}

}  // namespace

CertificateCheck verify_certificate(const ConstructionCertificate& cert,
                                    const Budget& budget) {
  CertificateCheck check;
  check.graph_ok = interaction_graph(cert.fds) == cert.claimed_graph;
  ScanOptions opts;
  opts.budget = budget;
  auto stats = scan_states(cert.fds, opts);
  check.measured = cert.claim.quantity == 's' ? cert.fds.n - stats.max_dh
                                              : stats.min_dh;
  Rational measured(check.measured);
  check.bound_ok =
      cert.claim.exact ? measured == cert.claim.value : measured >= cert.claim.value;
  return check;
}

LocalFunction phi_local(int v, const std::vector<int>& nbhd) {
  if (nbhd.empty()) throw DomainError("phi_local: empty neighbourhood");
  auto support = sorted_with(nbhd, v);
  size_t sv = slot_of(support, v);
  return make_local(support, 2, [&, sv](const std::vector<value_t>& x) {
    value_t all = 1;
    for (size_t j = 0; j < x.size(); ++j)
      if (j != sv) all &= x[j];
    return x[sv] | all;
  });
}

LocalFunction psi_local(int v, const std::vector<int>& nbhd) {
  if (nbhd.empty()) throw DomainError("psi_local: empty neighbourhood");
  auto support = sorted_with(nbhd, v);
  size_t sv = slot_of(support, v);
  return make_local(support, 2, [&, sv](const std::vector<value_t>& x) {
    value_t any = 0;
    for (size_t j = 0; j < x.size(); ++j)
      if (j != sv) any |= x[j];
    return x[sv] & any;
  });
}

ConstructionCertificate complete_graph_fn(int n, int q) {
  if (n < 2 || q < 2) throw DomainError("complete_graph_fn: need n,q >= 2");
  ConstructionCertificate cert;
  cert.fds.n = n;
  cert.fds.q = q;
  for (int v = 1; v <= n; ++v) {
    std::vector<int> support;
    for (int u = 1; u <= n; ++u)
      if (u != v) support.push_back(u);
    cert.fds.locals.push_back(
        make_local(support, q, [v, q](const std::vector<value_t>& x) {
          long sum = 0;
          for (value_t d : x) sum += d;
          long r = (v - sum) % q;
          return static_cast<value_t>((r + q) % q);
        }));
  }
  Digraph kn(n);
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (u != v) kn.add_arc(u, v);
  cert.claimed_graph = kn;
  cert.claim = {'s', true, Rational(n / q)};
  return cert;
}

Fds double_alphabet(const Fds& f, const Digraph& d) {
  if (d.has_any_loop()) throw DomainError("double_alphabet: D must be loopless");
  if (f.n != d.vertex_count())
    throw DomainError("double_alphabet: dimension mismatch");
  const int q = f.q;
  const int q2 = 2 * q;
  if (q2 > kMaxAlphabet) throw DomainError("double_alphabet: alphabet too big");
  Fds fc = canonicalize(f);
  for (int v = 1; v <= f.n; ++v)
    for (int u : fc.local(v).support)
      if (!d.has_arc(u, v))
        throw DomainError("double_alphabet: G(f) not contained in D");

  Fds g;
  g.n = f.n;
  g.q = q2;
  for (int v = 1; v <= f.n; ++v) {
    const std::vector<int>& support = d.in_neighbours(v);
    const auto& src = fc.local(v);
    std::vector<size_t> src_slot;
    for (int u : src.support) src_slot.push_back(slot_of(support, u));
    g.locals.push_back(
        make_local(support, q2, [&](const std::vector<value_t>& y) {
          u64 idx = 0;
          for (size_t j = src_slot.size(); j-- > 0;)
            idx = idx * q + (y[src_slot[j]] % q);
          value_t first = src.table[idx];
          value_t all = 1;
          for (value_t digit : y) all &= digit / q;
          return static_cast<value_t>(first + q * all);
        }));
  }
  return g;
}

ConstructionCertificate loopfull_stability_fn(const Digraph& d, int q) {
  if (d.has_any_loop())
    throw DomainError("loopfull_stability_fn: D must be loopless");
  const int n = d.vertex_count();
  std::vector<int> src = sources(d);
  const int non_sources = n - static_cast<int>(src.size());
  if (q < 2 || q < non_sources)
    throw DomainError("loopfull_stability_fn: alphabet below n - |S|");
  std::vector<char> is_src(n + 1, 0);
  for (int s : src) is_src[s] = 1;

  ConstructionCertificate cert;
  cert.fds.n = n;
  cert.fds.q = q;
  cert.fds.locals.resize(n);
  int label = 0;  // non-sources renumbered 1..n-|S| in ascending order
  for (int v = 1; v <= n; ++v) {
    if (is_src[v]) {
      cert.fds.locals[v - 1] = identity_local(v, q);
      continue;
    }
    const int mark = label++;  // misses when the whole closed nbhd reads mark
    auto support = sorted_with(d.in_neighbours(v), v);
    size_t sv = slot_of(support, v);
    cert.fds.locals[v - 1] =
        make_local(support, q, [mark, sv, q](const std::vector<value_t>& x) {
          bool miss = true;
          for (value_t digit : x) miss &= digit == mark;
          return static_cast<value_t>((x[sv] + (miss ? 1 : 0)) % q);
        });
  }
  cert.claimed_graph = add_loops(d);
  cert.claim = {'s', true, Rational(n - sigma(d))};
  return cert;
}

ConstructionCertificate loopfull_instability_fn(const Digraph& d, int q) {
  if (d.has_any_loop())
    throw DomainError("loopfull_instability_fn: D must be loopless");
  if (q < 3) throw DomainError("loopfull_instability_fn: q >= 3 required");
  const int n = d.vertex_count();
  std::vector<char> is_src(n + 1, 1);
  for (int v = 1; v <= n; ++v)
    if (d.in_degree(v) > 0) is_src[v] = 0;

  ConstructionCertificate cert;
  cert.fds.n = n;
  cert.fds.q = q;
  cert.fds.locals.resize(n);
  for (int v = 1; v <= n; ++v) {
    auto support = sorted_with(d.in_neighbours(v), v);
    size_t sv = slot_of(support, v);
    bool plain = is_src[v];
    cert.fds.locals[v - 1] =
        make_local(support, q, [sv, q, plain](const std::vector<value_t>& x) {
          bool bump = false;
          if (!plain) {
            bump = true;
            for (value_t digit : x) bump &= digit == 0;
          }
          return static_cast<value_t>((x[sv] + 1 + (bump ? 1 : 0)) % q);
        });
  }
  cert.claimed_graph = add_loops(d);
  cert.claim = {'i', true, Rational(n)};
  return cert;
}

Digraph degree_family_graph(int t, int delta, int q) {
  if (t < 1 || delta < 1 || q < 2) throw DomainError("degree_family: bad params");
  const u64 block = checked_pow(static_cast<u64>(q),
                                static_cast<unsigned>(delta), u64(1) << 20,
                                "degree family block");
  const u64 n = static_cast<u64>(t) * block;
  if (n > (u64(1) << 20)) throw BudgetError("degree family too large");
  Digraph d(static_cast<int>(n));
  for (int a = 1; a <= delta; ++a)
    for (int v = 1; v <= static_cast<int>(n); ++v)
      if (v != a) d.add_arc(a, v);
  return d;
}

ConstructionCertificate degree_family(int t, int delta, int q) {
  Digraph d = degree_family_graph(t, delta, q);
  const int n = d.vertex_count();
  const u64 block = static_cast<u64>(n) / t;  // q^delta

  ConstructionCertificate cert;
  cert.fds.n = n;
  cert.fds.q = q;
  cert.fds.locals.resize(n);
  for (int v = 1; v <= n; ++v) {
    // v = c_{i,j} with j = ((v-1) mod block) + 1; it misses exactly on
    // x_A = z_j, the assignment of rank j-1.
    const u64 miss_rank = static_cast<u64>((v - 1) % block);
    auto support = sorted_with(d.in_neighbours(v), v);
    size_t sv = slot_of(support, v);
    // The slots of A = {1..delta} are the first delta slots of the support,
    // those labels being minimal, so the x_A rank reads off them directly.
    cert.fds.locals[v - 1] = make_local(
        support, q, [&, sv](const std::vector<value_t>& x) {
          u64 rank = 0;
          for (size_t j = static_cast<size_t>(delta); j-- > 0;)
            rank = rank * q + x[j];
          return static_cast<value_t>((x[sv] + (rank == miss_rank ? 1 : 0)) % q);
        });
  }
  cert.claimed_graph = add_loops(d);
  if (q == 2 && delta == 1) {
    // The sender's local is constant at q = 2, delta = 1: its loop (its only
    // in-arc) is not realized.
    Digraph g(n);
    for (auto [u, v] : cert.claimed_graph.arcs())
      if (v != 1) g.add_arc(u, v);
    cert.claimed_graph = g;
  }
  cert.claim = {'s', true, Rational(n - t)};
  return cert;
}

namespace {

// Locals of the Lemma out-cycle function, keyed by original vertex label.
void outcycle_plain_locals(const OutCycleShape& shape,
                           std::map<int, LocalFunction>& locals) {
  check_shape(shape);
  const int k = static_cast<int>(shape.cycle.size());
  std::vector<char> carries_pendant(k, 0);
  for (int p : shape.pendant_positions) carries_pendant[p] = 1;
  if (k == 1) {
    locals[shape.cycle[0]] = identity_local(shape.cycle[0], 2);
  } else {
    for (int i = 0; i < k; ++i) {
      int prev = (i + k - 1) % k;
      locals[shape.cycle[i]] =
          carries_pendant[prev]
              ? ornot_local(shape.cycle[i], shape.cycle[prev])
              : or_local(shape.cycle[i], shape.cycle[prev]);
    }
  }
  for (size_t j = 0; j < shape.pendants.size(); ++j)
    locals[shape.pendants[j]] =
        andnot_local(shape.pendants[j], shape.cycle[shape.pendant_positions[j]]);
}

// Phi/psi markers of the monotone out-cycle function ('p' phi, 's' psi,
// 'i' identity at a trivial source core).
void outcycle_markers(const OutCycleShape& raw, std::map<int, char>& mark) {
  check_shape(raw);
  if (raw.cycle.size() == 1) {
    mark[raw.cycle[0]] = 'i';
    if (!raw.pendants.empty()) mark[raw.pendants[0]] = 'p';
    return;
  }
  if (raw.is_pure_cycle()) {
    for (int v : raw.cycle) mark[v] = 'p';
    return;
  }
  OutCycleShape shape = raw.rotated_to_pendant_start();
  const int k = static_cast<int>(shape.cycle.size());
  std::vector<char> carries_pendant(k, 0);
  for (int p : shape.pendant_positions) carries_pendant[p] = 1;
  mark[shape.cycle[0]] = 'p';
  for (int i = 0; i + 1 < k; ++i) {
    char here = mark[shape.cycle[i]];
    mark[shape.cycle[i + 1]] =
        carries_pendant[i] ? (here == 'p' ? 's' : 'p') : here;
  }
  for (size_t j = 0; j < shape.pendants.size(); ++j)
    mark[shape.pendants[j]] = mark[shape.cycle[shape.pendant_positions[j]]];
}

// Largest number of simultaneous misses the certificate argument allows.
int outcycle_miss_bound(const OutCycleShape& shape, bool monotone) {
  const int k = static_cast<int>(shape.cycle.size());
  const int total = shape.size();
  if (k == 1) return static_cast<int>(shape.pendants.size());
  if (shape.is_pure_cycle()) return k / 2;  // independent set of the cycle D'
  // Pendant case: independent set of the Hamiltonian cycle D' (plain) or
  // path D* (monotone).
  return monotone ? (total + 1) / 2 : total / 2;
}

int component_miss_bound(const ComponentPlan& plan, bool monotone) {
  return outcycle_miss_bound(plan.base, monotone) +
         static_cast<int>(plan.steps.size());
}

void apply_step_locals(const BuildStep& step,
                       std::map<int, LocalFunction>& locals) {
  locals[step.u] = and_local(step.u, step.anchor);
  locals[step.v] = step.kind == BuildStep::Kind::Fork
                       ? or_local(step.v, step.anchor)
                       : and_local(step.v, step.u);
}

void apply_step_markers(const BuildStep& step, std::map<int, char>& mark) {
  mark[step.u] = 's';
  mark[step.v] = step.kind == BuildStep::Kind::Fork ? 'p' : 's';
}

Fds assemble_fds(int n, int q, const std::map<int, LocalFunction>& locals) {
  Fds f;
  f.n = n;
  f.q = q;
  f.locals.resize(n);
  for (int v = 1; v <= n; ++v) {
    auto it = locals.find(v);
    if (it == locals.end())
      throw std::logic_error("pipeline: vertex without a local function");
    f.locals[v - 1] = it->second;
  }
  return f;
}

}  // namespace

ConstructionCertificate outcycle_boolean_fn(const OutCycleShape& shape) {
  check_shape(shape);
  const int n = shape.size();
  std::vector<int> all = shape.cycle;
  all.insert(all.end(), shape.pendants.begin(), shape.pendants.end());
  std::sort(all.begin(), all.end());
  for (int i = 0; i < n; ++i)
    if (all[i] != i + 1)
      throw DomainError("outcycle_boolean_fn: labels must be 1..n");

  std::map<int, LocalFunction> locals;
  outcycle_plain_locals(shape, locals);
  ConstructionCertificate cert;
  cert.fds = assemble_fds(n, 2, locals);
  cert.claimed_graph = add_loops(shape.to_digraph(n));
  cert.claim = {'s', false, Rational(n, 2)};
  return cert;
}

ConstructionCertificate monotone_outcycle_fn(const OutCycleShape& shape) {
  check_shape(shape);
  const int n = shape.size();
  std::vector<int> all = shape.cycle;
  all.insert(all.end(), shape.pendants.begin(), shape.pendants.end());
  std::sort(all.begin(), all.end());
  for (int i = 0; i < n; ++i)
    if (all[i] != i + 1)
      throw DomainError("monotone_outcycle_fn: labels must be 1..n");

  std::map<int, char> mark;
  outcycle_markers(shape, mark);
  Digraph base = shape.to_digraph(n);
  std::map<int, LocalFunction> locals;
  for (auto [v, m] : mark) {
    if (m == 'i')
      locals[v] = identity_local(v, 2);
    else if (m == 'p')
      locals[v] = phi_local(v, base.in_neighbours(v));
    else
      locals[v] = psi_local(v, base.in_neighbours(v));
  }
  ConstructionCertificate cert;
  cert.fds = assemble_fds(n, 2, locals);
  cert.claimed_graph = add_loops(base);
  cert.claim = {'s', false,
                shape.is_pure_cycle() && n >= 2 ? Rational((n + 1) / 2)
                                                : Rational(n / 2)};
  return cert;
}

Fds lift_fork(const Fds& f, const Digraph& h, int a) {
  if (f.q != 2) throw DomainError("lift_fork: Boolean alphabet required");
  if (a < 1 || a > h.vertex_count()) throw DomainError("lift_fork: bad anchor");
  const int n = h.vertex_count();
  Fds g = f;
  g.n = n + 2;
  g.locals.push_back(and_local(n + 1, a));
  g.locals.push_back(or_local(n + 2, a));
  return g;
}

Fds lift_branch(const Fds& f, const Digraph& h, int a) {
  if (f.q != 2) throw DomainError("lift_branch: Boolean alphabet required");
  if (a < 1 || a > h.vertex_count())
    throw DomainError("lift_branch: bad anchor");
  const int n = h.vertex_count();
  Fds g = f;
  g.n = n + 2;
  g.locals.push_back(and_local(n + 1, a));
  g.locals.push_back(and_local(n + 2, n + 1));
  return g;
}

Fds lift_supergraph(const Fds& f, const Digraph& h, const Digraph& d) {
  if (f.q != 2) throw DomainError("lift_supergraph: Boolean alphabet required");
  if (!subgraph_leq(h, d))
    throw DomainError("lift_supergraph: H must be a spanning subgraph of D");
  if (f.n != h.vertex_count())
    throw DomainError("lift_supergraph: dimension mismatch");

  Fds out;
  out.n = f.n;
  out.q = 2;
  out.locals.resize(f.n);
  for (int v = 1; v <= f.n; ++v) {
    if (d.in_degree(v) == 0) {
      out.locals[v - 1] = identity_local(v, 2);
      continue;
    }
    auto support = sorted_with(d.in_neighbours(v), v);
    size_t sv = slot_of(support, v);
    const auto& src = f.local(v);
    std::vector<size_t> src_slot;
    for (int u : src.support) src_slot.push_back(slot_of(support, u));
    // Guard inputs: in-neighbours of v in D but not in H.
    std::vector<size_t> guard;
    const auto& in_h = h.in_neighbours(v);
    for (int u : d.in_neighbours(v))
      if (!std::binary_search(in_h.begin(), in_h.end(), u))
        guard.push_back(slot_of(support, u));
    out.locals[v - 1] =
        make_local(support, 2, [&, sv](const std::vector<value_t>& x) {
          u64 idx = 0;
          for (size_t j = src_slot.size(); j-- > 0;)
            idx = idx * 2 + x[src_slot[j]];
          value_t miss = src.table[idx] ^ x[sv];
          for (size_t gslot : guard) miss &= x[gslot];
          return static_cast<value_t>(x[sv] ^ miss);
        });
  }
  return out;
}

ConstructionCertificate halfn_stable_fn(const Digraph& d, u64 seed) {
  if (d.has_any_loop())
    throw DomainError("halfn_stable_fn: D must be loopless");
  const int n = d.vertex_count();
  Digraph h = cofunctional_spanning_subgraph(d, seed);
  BuildPlan plan = decompose_cofunctional(h);
  std::map<int, LocalFunction> locals;
  for (const auto& comp : plan.components) {
    outcycle_plain_locals(comp.base, locals);
    for (const auto& step : comp.steps) apply_step_locals(step, locals);
  }
  Fds on_h = assemble_fds(n, 2, locals);
  ConstructionCertificate cert;
  cert.fds = lift_supergraph(on_h, h, d);
  cert.claimed_graph = add_loops(d);
  cert.claim = {'s', false, Rational(n, 2)};
  return cert;
}

namespace {

// Certified stability of one weak component of D under the monotone pipeline
// for a given ordering of its initial components.
int monotone_certified(const Digraph& d, u64 seed,
                       const std::vector<int>& full_order,
                       const std::vector<char>& in_comp) {
  Digraph h = cofunctional_spanning_subgraph_ordered(d, seed, full_order);
  BuildPlan plan = decompose_cofunctional(h);
  int misses = 0, comp_size = 0;
  for (const auto& cp : plan.components) {
    int head = cp.base.cycle.front();
    if (!in_comp[head]) continue;
    misses += component_miss_bound(cp, true);
    comp_size += cp.base.size() + 2 * static_cast<int>(cp.steps.size());
  }
  return comp_size - misses;
}

}  // namespace

ConstructionCertificate monotone_halfn_fn(const Digraph& d, u64 seed) {
  if (d.has_any_loop())
    throw DomainError("monotone_halfn_fn: D must be loopless");
  const int n = d.vertex_count();
  auto comps_d = weakly_connected_components(d);
  auto initials = initial_strong_components(d);
  std::vector<int> comp_of(n + 1, -1);
  for (size_t c = 0; c < comps_d.size(); ++c)
    for (int v : comps_d[c]) comp_of[v] = static_cast<int>(c);

  // Initial components grouped by the weak component they live in.
  std::vector<std::vector<int>> grouped(comps_d.size());
  for (size_t i = 0; i < initials.size(); ++i)
    grouped[comp_of[initials[i].front()]].push_back(static_cast<int>(i));

  // The DFS split of a weak component into co-functional pieces depends on
  // the order its initial components are processed in; a bad order can cost
  // the floor(n_i/2) bound. Try orders per component and keep the best
  // certified one (components do not interact).
  std::vector<int> chosen;
  for (size_t c = 0; c < comps_d.size(); ++c) {
    std::vector<char> in_comp(n + 1, 0);
    for (int v : comps_d[c]) in_comp[v] = 1;
    std::vector<std::vector<int>> candidates;
    std::vector<int> base_order = grouped[c];
    if (base_order.size() <= 1) {
      candidates.push_back(base_order);
    } else if (base_order.size() <= 5) {
      std::vector<int> perm = base_order;
      do candidates.push_back(perm);
      while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      candidates.push_back(base_order);
      candidates.emplace_back(base_order.rbegin(), base_order.rend());
      for (int trial = 0; trial < 14; ++trial) {
        std::vector<int> perm = base_order;
        for (size_t i = perm.size(); i > 1; --i)
          std::swap(perm[i - 1],
                    perm[mix64(seed ^ (u64(trial) << 32) ^ i) % i]);
        candidates.push_back(perm);
      }
    }
    int best_value = -1;
    std::vector<int> best_perm;
    for (const auto& cand : candidates) {
      std::vector<int> full_order;
      for (size_t i = 0; i < initials.size(); ++i)
        if (comp_of[initials[i].front()] != static_cast<int>(c))
          full_order.push_back(static_cast<int>(i));
      full_order.insert(full_order.end(), cand.begin(), cand.end());
      int value = monotone_certified(d, seed, full_order, in_comp);
      if (value > best_value) {
        best_value = value;
        best_perm = cand;
      }
      if (best_value >= static_cast<int>(comps_d[c].size() + 1) / 2) break;
    }
    chosen.insert(chosen.end(), best_perm.begin(), best_perm.end());
  }

  Digraph h = cofunctional_spanning_subgraph_ordered(d, seed, chosen);
  BuildPlan plan = decompose_cofunctional(h);
  std::map<int, char> mark;
  for (const auto& comp : plan.components) {
    outcycle_markers(comp.base, mark);
    for (const auto& step : comp.steps) apply_step_markers(step, mark);
  }

  // Monotone supergraph lift: keep each marker, widen to the D neighbourhood.
  std::map<int, LocalFunction> locals;
  for (int v = 1; v <= n; ++v) {
    if (d.in_degree(v) == 0) {
      locals[v] = identity_local(v, 2);
      continue;
    }
    char m = mark.at(v);
    locals[v] = m == 's' ? psi_local(v, d.in_neighbours(v))
                         : phi_local(v, d.in_neighbours(v));
  }

  int floor_sum = 0;
  for (const auto& comp : comps_d)
    floor_sum += static_cast<int>(comp.size()) / 2;

  ConstructionCertificate cert;
  cert.fds = assemble_fds(n, 2, locals);
  cert.claimed_graph = add_loops(d);
  cert.claim = {'s', false, Rational(floor_sum)};
  return cert;
}

Digraph kmm_graph(int m) {
  if (m < 1) throw DomainError("kmm_graph: m >= 1 required");
  Digraph d(2 * m);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      d.add_arc(i, m + j);
      d.add_arc(m + j, i);
    }
  return d;
}

ConstructionCertificate kmm_stability_fn(int m) {
  Digraph d = kmm_graph(m);
  const int n = 2 * m;
  ConstructionCertificate cert;
  cert.fds.n = n;
  cert.fds.q = 2;
  cert.fds.locals.resize(n);
  for (int i = 1; i <= m; ++i) {
    // Left vertex l_i: misses iff x_{l_i} = 1, x_{r_i} = 1, rest of R zero.
    auto support = sorted_with(d.in_neighbours(i), i);
    size_t sv = slot_of(support, i);
    size_t partner = slot_of(support, m + i);
    cert.fds.locals[i - 1] = make_local(
        support, 2, [sv, partner](const std::vector<value_t>& x) {
          value_t miss = x[sv] & x[partner];
          for (size_t j = 0; j < x.size(); ++j)
            if (j != sv && j != partner) miss &= 1 - x[j];
          return static_cast<value_t>(x[sv] ^ miss);
        });
  }
  for (int j = 1; j <= m; ++j) {
    // Right vertex r_j: misses iff x_{r_j} = 1, x_{l_j} = 0, rest of L one.
    int v = m + j;
    auto support = sorted_with(d.in_neighbours(v), v);
    size_t sv = slot_of(support, v);
    size_t partner = slot_of(support, j);
    cert.fds.locals[v - 1] = make_local(
        support, 2, [sv, partner](const std::vector<value_t>& x) {
          value_t miss = x[sv] & (1 - x[partner]);
          for (size_t k = 0; k < x.size(); ++k)
            if (k != sv && k != partner) miss &= x[k];
          return static_cast<value_t>(x[sv] ^ miss);
        });
  }
  cert.claimed_graph = add_loops(d);
  cert.claim = {'s', true, Rational(2 * m - 1)};
  return cert;
}

ConstructionCertificate near_biclique_fn(const Digraph& d,
                                         const NearBicliqueWitness& witness) {
  if (d.has_any_loop())
    throw DomainError("near_biclique_fn: D must be loopless");
  const int n = d.vertex_count();
  std::vector<char> seen(n + 1, 0);
  for (int v : witness.a_side) seen[v] ^= 1;
  for (int v : witness.b_side) seen[v] ^= 1;
  for (int v : witness.source_set) seen[v] ^= 1;
  for (int v = 1; v <= n; ++v)
    if (!seen[v]) throw DomainError("near_biclique_fn: witness is not a partition");
  if (witness.source_set != sources(d))
    throw DomainError("near_biclique_fn: witness sources disagree with D");

  std::map<int, LocalFunction> locals;
  for (int v : witness.source_set) locals[v] = identity_local(v, 2);
  for (int v : witness.a_side) locals[v] = phi_local(v, d.in_neighbours(v));
  for (int v : witness.b_side) locals[v] = psi_local(v, d.in_neighbours(v));

  ConstructionCertificate cert;
  cert.fds = assemble_fds(n, 2, locals);
  cert.claimed_graph = add_loops(d);
  cert.claim = {'s', true, Rational(n - 1)};
  return cert;
}

Digraph bm_graph(int m) {
  if (m < 1) throw DomainError("bm_graph: m >= 1 required");
  const int n = 2 * m + 1;
  Digraph d(n);
  for (int i = 1; i <= 2 * m - 1; ++i) d.add_arc(i, i + 1);
  d.add_arc(2 * m, 1);
  d.add_arc(1, n);
  return d;
}

}  // namespace fdslib
