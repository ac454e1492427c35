#include <algorithm>
#include <deque>

#include "fdslib/digraph_algorithms.hpp"

namespace fdslib {

// Characterization search: the independence graph on non-sources must be
// bipartite (properties 1 and 2), every pair of non-sources must share a
// closed in-neighbour (property 3), and some 2-colouring (A,B) must give every
// cross pair a common open in-neighbour (property 4).
std::optional<NearBicliqueWitness> is_near_biclique(const Digraph& d,
                                                    const Budget& budget) {
  if (d.has_any_loop())
    throw DomainError("is_near_biclique: input must be loopless");
  const int n = d.vertex_count();
  if (n > budget.max_sigma_vertices || n > 63)
    throw BudgetError("is_near_biclique: vertex count exceeds cap");
  if (d.arc_count() == 0) return std::nullopt;  // only non-empty graphs qualify

  std::vector<int> src = sources(d);
  std::vector<char> is_src(n + 1, 0);
  for (int s : src) is_src[s] = 1;
  std::vector<int> non_src;
  for (int v = 1; v <= n; ++v)
    if (!is_src[v]) non_src.push_back(v);

  std::vector<u64> open_nb(n + 1, 0), closed_nb(n + 1, 0);
  for (int v = 1; v <= n; ++v) {
    for (int u : d.in_neighbours(v)) open_nb[v] |= u64(1) << (u - 1);
    closed_nb[v] = open_nb[v] | (u64(1) << (v - 1));
  }

  // Property 3 does not depend on the colouring.
  for (size_t i = 0; i < non_src.size(); ++i)
    for (size_t j = i + 1; j < non_src.size(); ++j)
      if ((closed_nb[non_src[i]] & closed_nb[non_src[j]]) == 0)
        return std::nullopt;

  // 2-colour the independence graph component by component.
  auto independent = [&](int u, int v) {
    return !d.has_arc(u, v) && !d.has_arc(v, u);
  };
  std::vector<int> colour(n + 1, -1), comp_of(n + 1, -1);
  std::vector<std::vector<int>> comp_members;
  for (int root : non_src) {
    if (comp_of[root] >= 0) continue;
    int id = static_cast<int>(comp_members.size());
    comp_members.emplace_back();
    std::deque<int> queue{root};
    comp_of[root] = id;
    colour[root] = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      comp_members[id].push_back(v);
      for (int w : non_src) {
        if (w == v || !independent(v, w)) continue;
        if (comp_of[w] < 0) {
          comp_of[w] = id;
          colour[w] = colour[v] ^ 1;
          queue.push_back(w);
        } else if (colour[w] == colour[v]) {
          return std::nullopt;  // odd independence cycle: not bipartite
        }
      }
    }
  }

  const int comps = static_cast<int>(comp_members.size());
  if (comps > 20) throw BudgetError("is_near_biclique: too many colourings");
  for (u64 flips = 0; flips < (u64(1) << comps); ++flips) {
    std::vector<int> a_side, b_side;
    for (int v : non_src) {
      int c = colour[v] ^ static_cast<int>((flips >> comp_of[v]) & 1);
      (c == 0 ? a_side : b_side).push_back(v);
    }
    bool ok = true;
    for (int a : a_side) {
      for (int b : b_side)
        if ((open_nb[a] & open_nb[b]) == 0) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (ok) {
      NearBicliqueWitness w;
      w.a_side = std::move(a_side);
      w.b_side = std::move(b_side);
      w.source_set = src;
      return w;
    }
  }
  return std::nullopt;
}

}  // namespace fdslib
