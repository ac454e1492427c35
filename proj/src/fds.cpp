#include "fdslib/fds.hpp"

#include <algorithm>

namespace fdslib {

u64 table_size_for(int support_size, int q, u64 cap) {
  return checked_pow(static_cast<u64>(q), static_cast<unsigned>(support_size),
                     cap, "truth table size");
}

void Fds::validate() const {
  if (n < 0 || q < 2 || q > kMaxAlphabet)
    throw DomainError("fds: bad dimensions");
  if (static_cast<int>(locals.size()) != n)
    throw DomainError("fds: expected one local function per vertex");
  for (int v = 1; v <= n; ++v) {
    const auto& lf = local(v);
    for (size_t i = 0; i < lf.support.size(); ++i) {
      if (lf.support[i] < 1 || lf.support[i] > n)
        throw DomainError("fds: support vertex out of range");
      if (i > 0 && lf.support[i] <= lf.support[i - 1])
        throw DomainError("fds: support must be strictly increasing");
    }
    u64 want = table_size_for(static_cast<int>(lf.support.size()), q,
                              u64(1) << 40);
    if (lf.table.size() != want)
      throw DomainError("fds: table length disagrees with support size");
    for (value_t t : lf.table)
      if (t >= q) throw DomainError("fds: table entry outside alphabet");
  }
}

Fds identity_fds(int n, int q) {
  Fds f;
  f.n = n;
  f.q = q;
  f.locals.resize(n);
  for (int v = 1; v <= n; ++v) {
    f.locals[v - 1].support = {v};
    f.locals[v - 1].table.resize(q);
    for (int a = 0; a < q; ++a)
      f.locals[v - 1].table[a] = static_cast<value_t>(a);
  }
  return f;
}

u64 support_rank(const std::vector<value_t>& coords,
                 const std::vector<int>& support, int q) {
  u64 r = 0;
  for (size_t j = support.size(); j-- > 0;) r = r * q + coords[support[j] - 1];
  return r;
}

value_t evaluate_local(const Fds& f, int v, const std::vector<value_t>& coords) {
  const auto& lf = f.local(v);
  return lf.table[support_rank(coords, lf.support, f.q)];
}

StateVector evaluate(const Fds& f, const StateVector& x) {
  if (x.q != f.q || x.size() != f.n)
    throw DomainError("evaluate: state does not match system dimensions");
  StateVector y;
  y.q = f.q;
  y.coords.resize(f.n);
  for (int v = 1; v <= f.n; ++v)
    y.coords[v - 1] = evaluate_local(f, v, x.coords);
  return y;
}

std::vector<int> essential_inputs(const LocalFunction& lf, int q) {
  std::vector<int> essential;
  const int d = static_cast<int>(lf.support.size());
  u64 stride = 1;
  for (int j = 0; j < d; ++j, stride *= q) {
    // Input j is essential iff two table indices differing only in digit j
    // give different values.
    bool found = false;
    const u64 size = lf.table.size();
    for (u64 idx = 0; idx < size && !found; ++idx) {
      if ((idx / stride) % q != 0) continue;
      value_t first = lf.table[idx];
      for (int a = 1; a < q; ++a)
        if (lf.table[idx + stride * a] != first) {
          found = true;
          break;
        }
    }
    if (found) essential.push_back(lf.support[j]);
  }
  return essential;
}

Digraph interaction_graph(const Fds& f) {
  Digraph g(f.n);
  for (int v = 1; v <= f.n; ++v)
    for (int u : essential_inputs(f.local(v), f.q)) g.add_arc(u, v);
  return g;
}

namespace {

LocalFunction restrict_to(const LocalFunction& lf,
                          const std::vector<int>& keep, int q) {
  LocalFunction out;
  out.support = keep;
  out.table.resize(table_size_for(static_cast<int>(keep.size()), q,
                                  u64(1) << 40));
  // Positions of kept inputs inside the old support.
  std::vector<int> pos;
  for (int vertex : keep) {
    auto it = std::find(lf.support.begin(), lf.support.end(), vertex);
    pos.push_back(static_cast<int>(it - lf.support.begin()));
  }
  std::vector<u64> old_stride(lf.support.size());
  u64 s = 1;
  for (size_t j = 0; j < lf.support.size(); ++j, s *= q) old_stride[j] = s;
  for (u64 idx = 0; idx < out.table.size(); ++idx) {
    u64 old_idx = 0, rest = idx;
    for (size_t j = 0; j < keep.size(); ++j) {
      old_idx += (rest % q) * old_stride[pos[j]];
      rest /= q;
    }
    out.table[idx] = lf.table[old_idx];  // dropped inputs pinned to 0
  }
  return out;
}

}  // namespace

Fds canonicalize(const Fds& f) {
  Fds out = f;
  for (int v = 1; v <= f.n; ++v) {
    auto keep = essential_inputs(f.local(v), f.q);
    if (keep.size() != f.local(v).support.size())
      out.locals[v - 1] = restrict_to(f.local(v), keep, f.q);
  }
  return out;
}

bool is_monotone(const Fds& f) {
  if (f.q != 2) throw DomainError("is_monotone: Boolean alphabet required");
  for (const auto& lf : f.locals) {
    const u64 size = lf.table.size();
    for (u64 idx = 0; idx < size; ++idx)
      for (size_t j = 0; j < lf.support.size(); ++j) {
        u64 bit = u64(1) << j;
        if (idx & bit) continue;
        if (lf.table[idx] > lf.table[idx | bit]) return false;
      }
  }
  return true;
}

Fds dual(const Fds& f) {
  if (f.q != 2) throw DomainError("dual: Boolean alphabet required");
  Fds out = f;
  for (auto& lf : out.locals) {
    const u64 mask = lf.table.size() - 1;
    LocalFunction src = lf;
    for (u64 idx = 0; idx < lf.table.size(); ++idx)
      lf.table[idx] = static_cast<value_t>(1 - src.table[~idx & mask]);
  }
  return out;
}

std::vector<u64> xi_set(const Fds& f, int v) {
  const auto& lf = f.local(v);
  auto it = std::find(lf.support.begin(), lf.support.end(), v);
  if (it == lf.support.end())
    throw DomainError("xi_set: vertex must belong to its own support");
  const u64 self_stride =
      checked_pow(f.q, static_cast<unsigned>(it - lf.support.begin()),
                  u64(1) << 40);
  std::vector<u64> xi;
  for (u64 idx = 0; idx < lf.table.size(); ++idx) {
    value_t own = static_cast<value_t>((idx / self_stride) % f.q);
    if (lf.table[idx] != own) xi.push_back(idx);
  }
  return xi;
}

}  // namespace fdslib
