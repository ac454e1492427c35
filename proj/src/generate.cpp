#include "fdslib/generate.hpp"

namespace fdslib {

namespace {

std::vector<std::pair<int, int>> arc_slots(int n, bool loopless) {
  std::vector<std::pair<int, int>> slots;
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (!(loopless && u == v)) slots.emplace_back(u, v);
  return slots;
}

}  // namespace

std::vector<Digraph> generate_small_digraphs(int n, bool loopless) {
  if (n < 1) throw DomainError("generate_small_digraphs: n >= 1 required");
  auto slots = arc_slots(n, loopless);
  if (slots.size() > 16)
    throw DomainError("generate_small_digraphs: too many arc slots for "
                      "exhaustive mode");
  std::vector<Digraph> out;
  out.reserve(u64(1) << slots.size());
  for (u64 mask = 0; mask < (u64(1) << slots.size()); ++mask) {
    Digraph d(n);
    for (size_t i = 0; i < slots.size(); ++i)
      if ((mask >> i) & 1) d.add_arc(slots[i].first, slots[i].second);
    out.push_back(std::move(d));
  }
  return out;
}

Digraph random_digraph(int n, bool loopless, u64 seed, double arc_prob) {
  Rng rng(mix64(seed ^ 0x9a1f83b7c2d4e5f6ull));
  Digraph d(n);
  for (auto [u, v] : arc_slots(n, loopless))
    if (rng.unit() < arc_prob) d.add_arc(u, v);
  return d;
}

Digraph random_cofunctional(int n, u64 seed) {
  Rng rng(mix64(seed ^ 0x1d872b41c93a5e70ull));
  Digraph d(n);
  for (int v = 1; v <= n; ++v) {
    if (n < 2 || rng.unit() < 0.5) continue;
    int u = 1 + static_cast<int>(rng.below(n - 1));
    if (u >= v) ++u;
    d.add_arc(u, v);
  }
  return d;
}

}  // namespace fdslib
