#pragma once

#include <optional>
#include <vector>

#include "fdslib/digraph.hpp"

namespace fdslib {

// ---- basic structure ----

// Vertices with empty in-neighbourhood, ascending.
std::vector<int> sources(const Digraph& d);

// D° : add a loop on every vertex. Rejects input that already has a loop.
Digraph add_loops(const Digraph& d);

// Remove all loops (test helper; inverse of add_loops on loopless graphs).
Digraph strip_loops(const Digraph& d);

bool is_acyclic(const Digraph& d);

// Length of a shortest directed cycle; loops count as length 1; nullopt when
// acyclic.
std::optional<int> girth(const Digraph& d);

// Exact minimum feedback vertex set size, by branch and bound on a shortest
// cycle. Hard cap on the vertex count; never approximates.
int feedback_number(const Digraph& d,
                    const Budget& budget = default_budget());

// sigma(D) for loopless D: maximum number of non-source vertices whose closed
// in-neighbourhoods N(.;D°) are pairwise disjoint. Computed as a maximum
// independent set of the conflict graph.
int sigma(const Digraph& d, const Budget& budget = default_budget());

// Maximum in-degree at most one.
bool is_cofunctional(const Digraph& d);

bool is_weakly_connected(const Digraph& d);
std::vector<std::vector<int>> weakly_connected_components(const Digraph& d);

// Tarjan strong components, each sorted, in reverse topological discovery
// order of the condensation.
std::vector<std::vector<int>> strongly_connected_components(const Digraph& d);

// Strong components with no arc entering from outside, ordered by smallest
// member label.
std::vector<std::vector<int>> initial_strong_components(const Digraph& d);

// H <= D : spanning subgraph whose sources are sources of D.
// Throws on vertex-count mismatch.
bool subgraph_leq(const Digraph& h, const Digraph& d);

// ---- out-cycles and the co-functional decomposition ----

// A cycle a_1..a_k (or a single vertex) with at most one pendant out-arc per
// cycle vertex. pendant_positions[j] is the 0-based index into `cycle` of the
// vertex carrying pendants[j].
struct OutCycleShape {
  std::vector<int> cycle;
  std::vector<int> pendant_positions;
  std::vector<int> pendants;

  int size() const {
    return static_cast<int>(cycle.size() + pendants.size());
  }
  bool is_pure_cycle() const { return pendants.empty(); }
  Digraph to_digraph(int n_total) const;  // arcs embedded on vertices 1..n_total
  // Rotate so that cycle[0] carries a pendant (requires pendants and k >= 2).
  OutCycleShape rotated_to_pendant_start() const;
};

// Recognize an out-cycle. Pre: d weakly connected and co-functional (throws
// DomainError otherwise). Returns nullopt when d is not an out-cycle.
std::optional<OutCycleShape> recognize_out_cycle(const Digraph& d);

// Append two fresh vertices n+1, n+2 to anchor a:
// fork adds arcs (a,n+1),(a,n+2); branch adds (a,n+1),(n+1,n+2).
Digraph fork(const Digraph& d, int a);
Digraph branch(const Digraph& d, int a);

struct BuildStep {
  enum class Kind { Fork, Branch } kind;
  int anchor;
  int u;
  int v;
};

// Reconstruction recipe for one weakly connected component of a co-functional
// graph: start from the out-cycle base and apply steps in order.
struct ComponentPlan {
  OutCycleShape base;
  std::vector<BuildStep> steps;  // in replay order
};

struct BuildPlan {
  int n = 0;  // vertex count of the original graph
  std::vector<ComponentPlan> components;
  Digraph replay() const;
};

// Peel forks and branches off a co-functional graph until each component is an
// out-cycle. Replaying the plan reproduces the input arc-for-arc. Ties are
// broken by smallest vertex label.
BuildPlan decompose_cofunctional(const Digraph& d);

// A co-functional H <= D built from DFS out-trees rooted in the initial strong
// components, closing each non-source root with one in-arc chosen by the
// seed-keyed hash order. Pre: d loopless.
Digraph cofunctional_spanning_subgraph(const Digraph& d, u64 seed);

// Same, but with the initial components processed in a caller-supplied order
// (indices into initial_strong_components(d)). Used to steer the component
// split of H.
Digraph cofunctional_spanning_subgraph_ordered(const Digraph& d, u64 seed,
                                               const std::vector<int>& order);

// ---- near-bicliques ----

struct NearBicliqueWitness {
  std::vector<int> a_side;
  std::vector<int> b_side;
  std::vector<int> source_set;
};

// Witness that loopless d is a non-empty near-biclique (properties 1-4 over a
// partition V = A ∪ B ∪ S with S the sources), or nullopt. Arc-less graphs
// are negative.
std::optional<NearBicliqueWitness> is_near_biclique(
    const Digraph& d, const Budget& budget = default_budget());

}  // namespace fdslib
