#pragma once

#include <vector>

#include "fdslib/digraph.hpp"
#include "fdslib/state.hpp"

namespace fdslib {

// One coordinate update rule: a declared ordered support (strictly increasing
// vertex labels) and a truth table of length q^|support|, indexed by the
// base-q rank of the support assignment (support[0] is the least significant
// digit). Declared support may exceed the essential one.
struct LocalFunction {
  std::vector<int> support;
  std::vector<value_t> table;
};

// f = (f_1, .., f_n) : [q]^n -> [q]^n under the parallel update schedule.
// Immutable by convention; scans may share one instance across threads.
struct Fds {
  int n = 0;
  int q = 2;
  std::vector<LocalFunction> locals;  // locals[v-1] updates coordinate v

  const LocalFunction& local(int v) const { return locals.at(v - 1); }
  void validate() const;  // throws DomainError on any broken invariant
  bool operator==(const Fds&) const = default;
};

// The identity system: every local is x_v with support {v}.
Fds identity_fds(int n, int q);

u64 table_size_for(int support_size, int q, u64 cap);

// Rank of x restricted to `support`, in table index order.
u64 support_rank(const std::vector<value_t>& coords,
                 const std::vector<int>& support, int q);

value_t evaluate_local(const Fds& f, int v, const std::vector<value_t>& coords);
StateVector evaluate(const Fds& f, const StateVector& x);

// Subset of the declared support the table really depends on.
std::vector<int> essential_inputs(const LocalFunction& lf, int q);

// G(f): arc (u,v) iff f_v depends essentially on x_u. Declared-but-dead
// inputs never produce arcs.
Digraph interaction_graph(const Fds& f);

// Shrink every declared support to its essential subset.
Fds canonicalize(const Fds& f);

// q = 2 only: x <= y implies f(x) <= f(y), checked over covering pairs of
// each local's support cube.
bool is_monotone(const Fds& f);

// q = 2 only: the dual x -> ¬f(¬x).
Fds dual(const Fds& f);

// Xi(f_v): support-assignment ranks on which v guesses wrong, i.e.
// f_v(x_{N(v)}) != x_v. Pre: v belongs to its own support.
std::vector<u64> xi_set(const Fds& f, int v);

}  // namespace fdslib
