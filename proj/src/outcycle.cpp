#include <algorithm>
#include <stdexcept>

#include "fdslib/digraph_algorithms.hpp"

namespace fdslib {

Digraph OutCycleShape::to_digraph(int n_total) const {
  Digraph d(n_total);
  const int k = static_cast<int>(cycle.size());
  if (k >= 2)
    for (int i = 0; i < k; ++i) d.add_arc(cycle[i], cycle[(i + 1) % k]);
  for (size_t j = 0; j < pendants.size(); ++j)
    d.add_arc(cycle[pendant_positions[j]], pendants[j]);
  return d;
}

OutCycleShape OutCycleShape::rotated_to_pendant_start() const {
  if (pendants.empty() || cycle.size() < 2) return *this;
  // Rotate so the pendant-bearing vertex with the smallest label is cycle[0].
  int shift = pendant_positions[0];
  for (int p : pendant_positions)
    if (cycle[p] < cycle[shift]) shift = p;
  const int k = static_cast<int>(cycle.size());
  OutCycleShape out;
  out.cycle.resize(k);
  for (int i = 0; i < k; ++i) out.cycle[i] = cycle[(shift + i) % k];
  std::vector<std::pair<int, int>> moved;  // (new position, pendant)
  for (size_t j = 0; j < pendants.size(); ++j)
    moved.emplace_back((pendant_positions[j] - shift + k) % k, pendants[j]);
  std::sort(moved.begin(), moved.end());
  for (auto [pos, c] : moved) {
    out.pendant_positions.push_back(pos);
    out.pendants.push_back(c);
  }
  return out;
}

std::optional<OutCycleShape> recognize_out_cycle(const Digraph& d) {
  if (!is_cofunctional(d))
    throw DomainError("recognize_out_cycle: input not co-functional");
  if (d.has_any_loop())
    throw DomainError("recognize_out_cycle: input must be loopless");
  if (!is_weakly_connected(d))
    throw DomainError("recognize_out_cycle: input not weakly connected");
  const int n = d.vertex_count();
  if (n == 0) return std::nullopt;

  // Walk in-arcs backwards: in a connected co-functional graph this either
  // reaches the unique source (acyclic case) or enters the unique cycle.
  std::vector<int> seen_at(n + 1, -1);
  int cur = 1, step = 0;
  while (d.in_degree(cur) == 1 && seen_at[cur] < 0) {
    seen_at[cur] = step++;
    cur = d.in_neighbours(cur)[0];
  }

  OutCycleShape shape;
  if (d.in_degree(cur) == 0) {
    // Acyclic: an out-cycle needs a trivial core, so only a point or a single
    // pendant edge qualifies.
    if (n == 1) {
      shape.cycle = {1};
      return shape;
    }
    if (n == 2) {
      int leaf = d.out_degree(cur) == 1 ? d.out_neighbours(cur)[0] : 0;
      if (leaf == 0 || d.arc_count() != 1) return std::nullopt;
      shape.cycle = {cur};
      shape.pendant_positions = {0};
      shape.pendants = {leaf};
      return shape;
    }
    return std::nullopt;
  }

  // cur lies on the cycle; collect it following arcs forward, starting from
  // the smallest cycle label for a reproducible shape.
  std::vector<int> cyc{cur};
  for (int v = d.in_neighbours(cur)[0]; v != cur; v = d.in_neighbours(v)[0])
    cyc.push_back(v);
  std::reverse(cyc.begin() + 1, cyc.end());  // now in arc order cur -> ...
  int start = 0;
  for (size_t i = 1; i < cyc.size(); ++i)
    if (cyc[i] < cyc[start]) start = static_cast<int>(i);
  std::rotate(cyc.begin(), cyc.begin() + start, cyc.end());

  const int k = static_cast<int>(cyc.size());
  std::vector<int> pos_in_cycle(n + 1, -1);
  for (int i = 0; i < k; ++i) pos_in_cycle[cyc[i]] = i;

  // Every other vertex must be a pendant off the cycle, at most one each.
  std::vector<std::pair<int, int>> pend;  // (cycle position, pendant vertex)
  for (int v = 1; v <= n; ++v) {
    if (pos_in_cycle[v] >= 0) continue;
    if (d.out_degree(v) != 0 || d.in_degree(v) != 1) return std::nullopt;
    int a = d.in_neighbours(v)[0];
    if (pos_in_cycle[a] < 0) return std::nullopt;
    pend.emplace_back(pos_in_cycle[a], v);
  }
  for (int i = 0; i < k; ++i) {
    int expected = 1;  // cycle successor
    if (k == 1) expected = 0;
    int pendants_here = 0;
    for (auto& [p, c] : pend)
      if (p == i) ++pendants_here;
    if (pendants_here > 1) return std::nullopt;
    if (d.out_degree(cyc[i]) != expected + pendants_here) return std::nullopt;
  }
  std::sort(pend.begin(), pend.end());
  shape.cycle = std::move(cyc);
  for (auto [p, c] : pend) {
    shape.pendant_positions.push_back(p);
    shape.pendants.push_back(c);
  }
  return shape;
}

namespace {

// Mutable view used by the peeling loop.
struct Peeler {
  const Digraph& d;
  std::vector<char> alive;
  std::vector<int> out_alive;  // alive out-degree

  explicit Peeler(const Digraph& graph, const std::vector<int>& members)
      : d(graph), alive(graph.vertex_count() + 1, 0),
        out_alive(graph.vertex_count() + 1, 0) {
    for (int v : members) alive[v] = 1;
    for (int v : members)
      for (int w : d.out_neighbours(v))
        if (alive[w]) ++out_alive[v];
  }

  bool is_leaf(int v) const { return alive[v] && out_alive[v] == 0; }

  void kill(int v) {
    alive[v] = 0;
    for (int u : d.in_neighbours(v))
      if (alive[u]) --out_alive[u];
  }

  std::vector<int> alive_out_leaves(int v) const {
    std::vector<int> r;
    for (int w : d.out_neighbours(v))
      if (is_leaf(w)) r.push_back(w);
    return r;
  }

  int alive_in_neighbour(int v) const {
    for (int u : d.in_neighbours(v))
      if (alive[u]) return u;
    return 0;
  }
};

ComponentPlan decompose_component(const Digraph& d,
                                  const std::vector<int>& members) {
  // Core = the unique cycle if the component has one, else its root.
  std::vector<char> in_core(d.vertex_count() + 1, 0);
  {
    int cur = members.front();
    std::vector<int> seen(d.vertex_count() + 1, 0);
    while (d.in_degree(cur) == 1 && !seen[cur]) {
      seen[cur] = 1;
      cur = d.in_neighbours(cur)[0];
    }
    if (d.in_degree(cur) == 0) {
      in_core[cur] = 1;
    } else {
      in_core[cur] = 1;
      for (int v = d.in_neighbours(cur)[0]; v != cur;
           v = d.in_neighbours(v)[0])
        in_core[v] = 1;
    }
  }

  Peeler peel(d, members);
  std::vector<BuildStep> reversed;
  for (;;) {
    // Fork peel: smallest vertex with two or more alive leaf out-neighbours.
    int fork_at = 0;
    for (int v : members) {
      if (!peel.alive[v]) continue;
      if (peel.alive_out_leaves(v).size() >= 2) {
        fork_at = v;
        break;
      }
    }
    if (fork_at != 0) {
      auto leaves = peel.alive_out_leaves(fork_at);
      reversed.push_back(
          {BuildStep::Kind::Fork, fork_at, leaves[0], leaves[1]});
      peel.kill(leaves[0]);
      peel.kill(leaves[1]);
      continue;
    }
    // Branch peel: smallest non-core vertex whose single alive out-neighbour
    // is a leaf.
    int branch_s = 0;
    for (int v : members) {
      if (!peel.alive[v] || in_core[v]) continue;
      if (peel.out_alive[v] == 1 && peel.alive_out_leaves(v).size() == 1) {
        branch_s = v;
        break;
      }
    }
    if (branch_s != 0) {
      int leaf = peel.alive_out_leaves(branch_s)[0];
      int anchor = peel.alive_in_neighbour(branch_s);
      if (anchor == 0)
        throw std::logic_error("decompose: branch vertex without in-neighbour");
      reversed.push_back({BuildStep::Kind::Branch, anchor, branch_s, leaf});
      peel.kill(branch_s);
      peel.kill(leaf);
      continue;
    }
    break;
  }

  // Residue must be an out-cycle; recognize it on the induced alive subgraph.
  std::vector<int> residue;
  for (int v : members)
    if (peel.alive[v]) residue.push_back(v);
  std::vector<int> local_of(d.vertex_count() + 1, 0);
  for (size_t i = 0; i < residue.size(); ++i)
    local_of[residue[i]] = static_cast<int>(i) + 1;
  Digraph sub(static_cast<int>(residue.size()));
  for (int v : residue)
    for (int w : d.out_neighbours(v))
      if (peel.alive[w]) sub.add_arc(local_of[v], local_of[w]);
  auto local_shape = recognize_out_cycle(sub);
  if (!local_shape)
    throw std::logic_error("decompose: residue is not an out-cycle");

  ComponentPlan plan;
  plan.base = *local_shape;
  for (int& v : plan.base.cycle) v = residue[v - 1];
  for (int& v : plan.base.pendants) v = residue[v - 1];
  plan.steps.assign(reversed.rbegin(), reversed.rend());
  return plan;
}

}  // namespace

BuildPlan decompose_cofunctional(const Digraph& d) {
  if (!is_cofunctional(d))
    throw DomainError("decompose_cofunctional: input not co-functional");
  if (d.has_any_loop())
    throw DomainError("decompose_cofunctional: input must be loopless");
  BuildPlan plan;
  plan.n = d.vertex_count();
  for (const auto& members : weakly_connected_components(d))
    plan.components.push_back(decompose_component(d, members));
  return plan;
}

Digraph BuildPlan::replay() const {
  Digraph out(n);
  for (const auto& comp : components) {
    const int k = static_cast<int>(comp.base.cycle.size());
    if (k >= 2)
      for (int i = 0; i < k; ++i)
        out.add_arc(comp.base.cycle[i], comp.base.cycle[(i + 1) % k]);
    for (size_t j = 0; j < comp.base.pendants.size(); ++j)
      out.add_arc(comp.base.cycle[comp.base.pendant_positions[j]],
                  comp.base.pendants[j]);
    for (const auto& step : comp.steps) {
      out.add_arc(step.anchor, step.u);
      if (step.kind == BuildStep::Kind::Fork)
        out.add_arc(step.anchor, step.v);
      else
        out.add_arc(step.u, step.v);
    }
  }
  return out;
}

Digraph cofunctional_spanning_subgraph_ordered(const Digraph& d, u64 seed,
                                               const std::vector<int>& order) {
  if (d.has_any_loop())
    throw DomainError("cofunctional_spanning_subgraph: input must be loopless");
  const int n = d.vertex_count();
  auto comps = initial_strong_components(d);
  if (order.size() != comps.size())
    throw DomainError("spanning subgraph: order must list every component");

  Digraph h(n);
  std::vector<char> taken(n + 1, 0);
  for (int idx : order) {
    const auto& comp = comps.at(idx);
    int root = comp.front();
    if (taken[root])
      throw std::logic_error("initial component absorbed by an earlier tree");
    // DFS out-tree from the root, ascending neighbour order.
    struct Frame {
      int v;
      size_t next = 0;
    };
    std::vector<Frame> call{{root}};
    taken[root] = 1;
    while (!call.empty()) {
      Frame f = call.back();
      const auto& outs = d.out_neighbours(f.v);
      if (f.next >= outs.size()) {
        call.pop_back();
        continue;
      }
      ++call.back().next;
      int w = outs[f.next];
      if (!taken[w]) {
        taken[w] = 1;
        h.add_arc(f.v, w);
        call.push_back({w});
      }
    }
    // Close the root with one in-arc unless it is a source of D. The choice
    // is the hash-minimal in-neighbour, so it depends only on the seed and the
    // labels involved.
    if (d.in_degree(root) > 0) {
      int pick = 0;
      u64 pick_key = ~u64(0);
      for (int u : d.in_neighbours(root)) {
        u64 key = mix64(seed ^ mix64(static_cast<u64>(u)));
        if (key < pick_key || (key == pick_key && u < pick)) {
          pick_key = key;
          pick = u;
        }
      }
      h.add_arc(pick, root);
    }
  }
  for (int v = 1; v <= n; ++v)
    if (!taken[v]) throw std::logic_error("spanning subgraph missed a vertex");
  return h;
}

Digraph cofunctional_spanning_subgraph(const Digraph& d, u64 seed) {
  std::vector<int> order(initial_strong_components(d).size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  return cofunctional_spanning_subgraph_ordered(d, seed, order);
}

}  // namespace fdslib
