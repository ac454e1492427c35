#pragma once

#include <vector>

#include "fdslib/digraph.hpp"
#include "fdslib/sampling.hpp"

namespace fdslib {

// All 2^{n(n-1)} loopless (or 2^{n^2} loop-allowed) digraphs on n vertices in
// deterministic arc-mask order. Exhaustive mode is capped at 16 arc slots
// (n <= 4 loopless, n <= 4 with loops).
std::vector<Digraph> generate_small_digraphs(int n, bool loopless);

// Seeded random digraph: every arc slot included independently.
Digraph random_digraph(int n, bool loopless, u64 seed, double arc_prob = 0.5);

// Seeded random co-functional graph: each vertex gets at most one in-arc.
Digraph random_cofunctional(int n, u64 seed);

}  // namespace fdslib
