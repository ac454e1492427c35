#include "fdslib/digraph_algorithms.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace fdslib {

std::vector<int> sources(const Digraph& d) {
  std::vector<int> s;
  for (int v = 1; v <= d.vertex_count(); ++v)
    if (d.in_degree(v) == 0) s.push_back(v);
  return s;
}

Digraph add_loops(const Digraph& d) {
  if (d.has_any_loop()) throw DomainError("add_loops: input already has a loop");
  Digraph out = d;
  for (int v = 1; v <= d.vertex_count(); ++v) out.add_arc(v, v);
  return out;
}

Digraph strip_loops(const Digraph& d) {
  Digraph out(d.vertex_count());
  for (auto [u, v] : d.arcs())
    if (u != v) out.add_arc(u, v);
  return out;
}

bool is_acyclic(const Digraph& d) {
  // Kahn peeling on in-degrees.
  const int n = d.vertex_count();
  std::vector<int> deg(n + 1);
  std::deque<int> ready;
  for (int v = 1; v <= n; ++v) {
    deg[v] = d.in_degree(v);
    if (deg[v] == 0) ready.push_back(v);
  }
  int removed = 0;
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop_front();
    ++removed;
    for (int w : d.out_neighbours(v))
      if (--deg[w] == 0) ready.push_back(w);
  }
  return removed == n;
}

std::optional<int> girth(const Digraph& d) {
  const int n = d.vertex_count();
  int best = n + 1;
  for (int s = 1; s <= n; ++s) {
    if (d.has_loop(s)) return 1;
    // BFS from s; first return to s closes a shortest cycle through s.
    std::vector<int> dist(n + 1, -1);
    std::deque<int> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      if (dist[v] + 1 >= best) break;
      for (int w : d.out_neighbours(v)) {
        if (w == s) {
          best = std::min(best, dist[v] + 1);
          continue;
        }
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  if (best > n) return std::nullopt;
  return best;
}

namespace {

// Shortest cycle as a vertex list, empty when acyclic, restricted to vertices
// with alive[v].
std::vector<int> shortest_cycle_alive(const Digraph& d,
                                      const std::vector<char>& alive) {
  const int n = d.vertex_count();
  std::vector<int> best;
  for (int s = 1; s <= n; ++s) {
    if (!alive[s]) continue;
    if (d.has_loop(s)) return {s};
    std::vector<int> parent(n + 1, 0), dist(n + 1, -1);
    std::deque<int> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      if (!best.empty() &&
          dist[v] + 1 >= static_cast<int>(best.size()))
        break;
      for (int w : d.out_neighbours(v)) {
        if (!alive[w]) continue;
        if (w == s) {
          // parent chain v -> ... -> s spells the cycle s -> ... -> v -> s.
          std::vector<int> cyc;
          for (int x = v; x != 0; x = parent[x]) cyc.push_back(x);
          std::reverse(cyc.begin(), cyc.end());
          if (best.empty() || cyc.size() < best.size()) best = cyc;
          continue;
        }
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          queue.push_back(w);
        }
      }
    }
    if (best.size() == 2) break;  // can't beat a 2-cycle once loops are ruled out
  }
  return best;
}

void fvs_branch(const Digraph& d, std::vector<char>& alive, int used,
                int& best) {
  if (used >= best) return;
  std::vector<int> cyc = shortest_cycle_alive(d, alive);
  if (cyc.empty()) {
    best = used;
    return;
  }
  for (int v : cyc) {
    alive[v] = 0;
    fvs_branch(d, alive, used + 1, best);
    alive[v] = 1;
  }
}

}  // namespace

int feedback_number(const Digraph& d, const Budget& budget) {
  const int n = d.vertex_count();
  if (n > budget.max_tau_vertices)
    throw BudgetError("feedback_number: vertex count " + std::to_string(n) +
                      " exceeds cap " + std::to_string(budget.max_tau_vertices));
  std::vector<char> alive(n + 1, 1);
  int best = n;
  fvs_branch(d, alive, 0, best);
  return best;
}

namespace {

// Exact maximum independent set on an adjacency-mask graph, plain branch and
// bound, good enough for the sigma cap.
int mis(const std::vector<u64>& adj, u64 candidates, int current, int& best) {
  if (candidates == 0) {
    best = std::max(best, current);
    return best;
  }
  int remaining = __builtin_popcountll(candidates);
  if (current + remaining <= best) return best;
  // Branch on a maximum-degree candidate: either exclude it (must then take a
  // neighbour eventually) or include it.
  int pick = -1, pick_deg = -1;
  for (u64 m = candidates; m != 0; m &= m - 1) {
    int v = __builtin_ctzll(m);
    int deg = __builtin_popcountll(adj[v] & candidates);
    if (deg > pick_deg) {
      pick_deg = deg;
      pick = v;
    }
  }
  if (pick_deg == 0) {
    best = std::max(best, current + remaining);
    return best;
  }
  u64 bit = u64(1) << pick;
  mis(adj, candidates & ~(adj[pick] | bit), current + 1, best);
  mis(adj, candidates & ~bit, current, best);
  return best;
}

}  // namespace

int sigma(const Digraph& d, const Budget& budget) {
  if (d.has_any_loop()) throw DomainError("sigma: input must be loopless");
  const int n = d.vertex_count();
  if (n > budget.max_sigma_vertices || n > 63)
    throw BudgetError("sigma: vertex count exceeds cap");
  std::vector<int> src = sources(d);
  std::vector<char> is_src(n + 1, 0);
  for (int s : src) is_src[s] = 1;

  // Closed in-neighbourhood masks in D°.
  std::vector<u64> closed(n + 1, 0);
  for (int v = 1; v <= n; ++v) {
    closed[v] = u64(1) << (v - 1);
    for (int u : d.in_neighbours(v)) closed[v] |= u64(1) << (u - 1);
  }
  // Conflict graph on non-sources, 0-based bit positions.
  std::vector<u64> adj(n, 0);
  u64 candidates = 0;
  for (int v = 1; v <= n; ++v) {
    if (is_src[v]) continue;
    candidates |= u64(1) << (v - 1);
    for (int w = v + 1; w <= n; ++w) {
      if (is_src[w]) continue;
      if (closed[v] & closed[w]) {
        adj[v - 1] |= u64(1) << (w - 1);
        adj[w - 1] |= u64(1) << (v - 1);
      }
    }
  }
  int best = 0;
  return mis(adj, candidates, 0, best);
}

bool is_cofunctional(const Digraph& d) { return d.max_in_degree() <= 1; }

std::vector<std::vector<int>> weakly_connected_components(const Digraph& d) {
  const int n = d.vertex_count();
  std::vector<int> comp(n + 1, 0);
  std::vector<std::vector<int>> out;
  for (int s = 1; s <= n; ++s) {
    if (comp[s]) continue;
    int id = static_cast<int>(out.size()) + 1;
    std::vector<int> members;
    std::deque<int> queue{s};
    comp[s] = id;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      members.push_back(v);
      for (int w : d.out_neighbours(v))
        if (!comp[w]) comp[w] = id, queue.push_back(w);
      for (int w : d.in_neighbours(v))
        if (!comp[w]) comp[w] = id, queue.push_back(w);
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

bool is_weakly_connected(const Digraph& d) {
  return weakly_connected_components(d).size() <= 1;
}

std::vector<std::vector<int>> strongly_connected_components(const Digraph& d) {
  // Iterative Tarjan.
  const int n = d.vertex_count();
  std::vector<int> index(n + 1, -1), low(n + 1, 0);
  std::vector<char> on_stack(n + 1, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int counter = 0;

  struct Frame {
    int v;
    size_t next;
  };
  for (int root = 1; root <= n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& outs = d.out_neighbours(f.v);
      if (f.next < outs.size()) {
        int w = outs[f.next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == index[v]) {
          std::vector<int> comp;
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
            if (w == v) break;
          }
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
      }
    }
  }
  return comps;
}

std::vector<std::vector<int>> initial_strong_components(const Digraph& d) {
  auto comps = strongly_connected_components(d);
  const int n = d.vertex_count();
  std::vector<int> comp_of(n + 1, -1);
  for (size_t i = 0; i < comps.size(); ++i)
    for (int v : comps[i]) comp_of[v] = static_cast<int>(i);
  std::vector<char> entered(comps.size(), 0);
  for (auto [u, v] : d.arcs())
    if (comp_of[u] != comp_of[v]) entered[comp_of[v]] = 1;
  std::vector<std::vector<int>> out;
  for (size_t i = 0; i < comps.size(); ++i)
    if (!entered[i]) out.push_back(comps[i]);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

bool subgraph_leq(const Digraph& h, const Digraph& d) {
  if (h.vertex_count() != d.vertex_count())
    throw DomainError("subgraph_leq: vertex-count mismatch");
  for (auto [u, v] : h.arcs())
    if (!d.has_arc(u, v)) return false;
  for (int v = 1; v <= h.vertex_count(); ++v)
    if (h.in_degree(v) == 0 && d.in_degree(v) != 0) return false;
  return true;
}

Digraph fork(const Digraph& d, int a) {
  if (a < 1 || a > d.vertex_count()) throw DomainError("fork: bad anchor");
  Digraph out(d.vertex_count() + 2);
  for (auto [u, v] : d.arcs()) out.add_arc(u, v);
  out.add_arc(a, d.vertex_count() + 1);
  out.add_arc(a, d.vertex_count() + 2);
  return out;
}

Digraph branch(const Digraph& d, int a) {
  if (a < 1 || a > d.vertex_count()) throw DomainError("branch: bad anchor");
  const int u = d.vertex_count() + 1, v = d.vertex_count() + 2;
  Digraph out(d.vertex_count() + 2);
  for (auto [x, y] : d.arcs()) out.add_arc(x, y);
  out.add_arc(a, u);
  out.add_arc(u, v);
  return out;
}

}  // namespace fdslib
