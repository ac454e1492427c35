#pragma once

#include "fdslib/kernels/scan_kernels.hpp"

namespace fdslib {

enum class ScanKernel { Auto, Reference, Bitslice64, Avx2 };

struct ScanOptions {
  kernels::ScanAborts aborts;
  ScanKernel kernel = ScanKernel::Auto;
  int workers = 1;
  Budget budget = default_budget();
};

using ScanStats = kernels::RangeResult;

// One pass over all q^n states of f: min/max Hamming displacement with
// smallest-rank witnesses plus fixed-point count. Deterministic for any
// worker count. Throws BudgetError when q^n exceeds the state budget.
ScanStats scan_states(const Fds& f, const ScanOptions& opts = {});

// Spec quantities. Witness is the smallest-rank argmin of the minimized
// expression.
struct ValueWitness {
  int value;
  StateVector witness;
};
ValueWitness stability(const Fds& f, const ScanOptions& opts = {});
ValueWitness instability(const Fds& f, const ScanOptions& opts = {});

// All fixed-point ranks, ascending.
std::vector<u64> fixed_points(const Fds& f, const ScanOptions& opts = {});

// For sweeps that rewrite one Fds's tables in place: compile once, scan many
// times with per-function abort thresholds. Single-threaded.
ScanStats scan_precompiled(const kernels::CompiledFds& c,
                           const kernels::ScanAborts& aborts,
                           ScanKernel kernel = ScanKernel::Auto);

// Guessing code of the zero-anchored shift of f: { (f(x) - f(0)) - x : x },
// componentwise mod q, as sorted unique state ranks.
std::vector<u64> guessing_code(const Fds& f,
                               const Budget& budget = default_budget());

}  // namespace fdslib
