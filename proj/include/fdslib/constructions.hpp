#pragma once

#include "fdslib/digraph_algorithms.hpp"
#include "fdslib/fds.hpp"
#include "fdslib/numeric.hpp"

namespace fdslib {

// A claimed lower bound or exact value for the stability ('s') or
// instability ('i') of the packaged function.
struct BoundClaim {
  char quantity = 's';
  bool exact = false;  // '=' when true, '>=' otherwise
  Rational value = 0;
};

// A constructed function together with everything needed to machine-check it:
// the interaction graph it must realize exactly, and the bound it must meet.
struct ConstructionCertificate {
  Fds fds;
  Digraph claimed_graph;
  BoundClaim claim;
};

struct CertificateCheck {
  bool graph_ok = false;
  bool bound_ok = false;
  int measured = 0;
  bool ok() const { return graph_ok && bound_ok; }
};

// Brute-force check of both certificate invariants (within the state budget).
CertificateCheck verify_certificate(const ConstructionCertificate& cert,
                                    const Budget& budget = default_budget());

// The two monotone Boolean locals with a single wrong-guess pattern:
// phi = x_v ∨ ⋀_{u∈nbhd} x_u and psi = x_v ∧ ⋁_{u∈nbhd} x_u.
LocalFunction phi_local(int v, const std::vector<int>& nbhd);
LocalFunction psi_local(int v, const std::vector<int>& nbhd);

// f_v(x) = v - Σ_{u≠v} x_u (mod q) on K_n: s(f) = ⌊n/q⌋, i(f) = n - ⌈n/q⌉.
ConstructionCertificate complete_graph_fn(int n, int q);

// Alphabet doubling [2q] ≅ [q]×[2], y = y¹ + q·y²: g_v = (f_v(x¹), ⋀ x²_u)
// over N(v;D). G(g) = D and i(g) >= i(f). Pre: G(f) ⊆ D, D loopless.
Fds double_alphabet(const Fds& f, const Digraph& d);

// Loop-full stability attainer: sources keep x_v, non-source v (relabelled
// 1..n-|S|) misses only on x_{N(v;D°)} = (v-1,..,v-1). s(f) = n - sigma(D).
// Pre: D loopless, q >= max(2, n - |S|).
ConstructionCertificate loopfull_stability_fn(const Digraph& d, int q);

// Always-move function: f_v = x_v + 1 + 1{x_{N(v;D°)} = 0}. i(f) = n for
// q >= 3.
ConstructionCertificate loopfull_instability_fn(const Digraph& d, int q);

// The in-degree-bound family: n = t·q^Δ vertices in t blocks, all arcs from
// the first Δ vertices; every state misses exactly once per block, so
// s(f) = n - t. (At q = 2, Δ = 1 the designated sender's local degenerates to
// a constant and its loop drops out of the interaction graph.)
Digraph degree_family_graph(int t, int delta, int q);
ConstructionCertificate degree_family(int t, int delta, int q);

// Boolean out-cycle function with s(f) >= n/2 (labels must be 1..n).
ConstructionCertificate outcycle_boolean_fn(const OutCycleShape& shape);

// Stability +1 lifts along fork / branch extensions. Pre: q = 2,
// G(f) = H° ; the new vertices are n+1 and n+2 as in fork()/branch().
Fds lift_fork(const Fds& f, const Digraph& h, int a);
Fds lift_branch(const Fds& f, const Digraph& h, int a);

// Spanning-supergraph lift: guards every miss of f by the extra inputs, so
// Δ(x, f'(x)) ⊆ Δ(x, f(x)) and G(f') = D°. Pre: q = 2, H <= D, G(f) = H°.
Fds lift_supergraph(const Fds& f, const Digraph& h, const Digraph& d);

// Full pipeline: spanning co-functional subgraph, out-cycle bases,
// fork/branch lifts, component union, supergraph lift. G(f) = D°,
// s(f) >= n/2. The seed picks the back-arcs.
ConstructionCertificate halfn_stable_fn(const Digraph& d, u64 seed);

// Monotone out-cycle function (phi/psi markers): s >= ⌈n/2⌉ for pure cycles,
// s >= ⌊n/2⌋ otherwise.
ConstructionCertificate monotone_outcycle_fn(const OutCycleShape& shape);

// Monotone pipeline: G(f) = D°, monotone, s(f) >= Σ_components ⌊n_i/2⌋.
ConstructionCertificate monotone_halfn_fn(const Digraph& d, u64 seed);

// Balanced-biclique attainer with s(f) = 2m-1 on K°_{m,m}.
Digraph kmm_graph(int m);
ConstructionCertificate kmm_stability_fn(int m);

// Near-biclique monotone attainer with s(f) = n-1: phi on A, psi on B,
// identity on sources.
ConstructionCertificate near_biclique_fn(const Digraph& d,
                                         const NearBicliqueWitness& witness);

// The B_m family (n = 2m+1) whose monotone strict stability is m.
Digraph bm_graph(int m);

}  // namespace fdslib
