#pragma once

#include <optional>

#include "fdslib/enumeration.hpp"
#include "fdslib/numeric.hpp"
#include "fdslib/scan.hpp"

namespace fdslib {

enum class ExtremalKind {
  StabilitySubset,      // s(D,q)
  StabilityStrict,      // s[D,q]
  InstabilitySubset,    // i(D,q)
  InstabilityStrict,    // i[D,q]
  MonotoneStability,    // s_+[D°,2]
};

const char* extremal_kind_name(ExtremalKind kind);

struct ExtremalReport {
  ExtremalKind kind;
  int value = 0;
  Fds witness_fn;
  StateVector witness_state;
  u64 space_size = 0;
};

// Exact maximum of s(f) or i(f) over F(D,q) / F[D,q] by full enumeration with
// sound pruning; the witness is the smallest-index attainer. `stop_at` may
// name a known ceiling for the quantity: the sweep halts once it is attained
// (the first attainer of the ceiling is also the global first maximiser).
ExtremalReport extremal(const Digraph& d, int q, ExtremalKind kind,
                        const Budget& budget = default_budget(),
                        std::optional<int> stop_at = std::nullopt);

// Exact s[D°,q] for loopless D, searched over the dominating subspace where
// every non-source local misses on exactly one support assignment and sources
// are the identity (Ξ-set containment is stability-monotone, and every such
// pattern extends to a strict local function). space_size reports the
// subspace size.
ExtremalReport loopfull_stability_search(const Digraph& d, int q,
                                         const Budget& budget = default_budget());

// Exact s_+[D°,2] for loopless D over phi/psi assignments to non-sources
// (sources are the identity).
ExtremalReport monotone_optimal_stability(const Digraph& d,
                                          const Budget& budget = default_budget());

// Independent oracle for tiny graphs: maximum s(f) over every monotone f with
// G(f) = D°, enumerating all monotone essential local tables per vertex.
int monotone_oracle_stability(const Digraph& d,
                              const Budget& budget = default_budget());

struct FixCounts {
  u64 f0 = 0, f1 = 0, f2 = 0;
  u64 space_size = 0;
  Rational p0, p1, p2;
  u64 fix_total = 0;        // sum over the space of |Fix(f)|
  u64 stability_total = 0;  // sum over the space of s(f)
};

// Exact fixed-point class counts over F(D,q) / F[D,q].
FixCounts fix_class_counts(const Digraph& d, int q, bool strict,
                           const Budget& budget = default_budget());

}  // namespace fdslib
