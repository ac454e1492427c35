#pragma once

#include <climits>
#include <vector>

#include "fdslib/fds.hpp"

namespace fdslib::kernels {

// A system packed for tight state scans. Table storage is borrowed from the
// source Fds: sweeps may rewrite table *contents* in place between scans, but
// must not resize or reallocate them.
struct CompiledFds {
  struct Vertex {
    std::vector<int> positions;  // 0-based support positions (vertex - 1)
    std::vector<u64> strides;    // q^j for each support slot
    const value_t* table = nullptr;
    u64 table_size = 0;
  };

  int n = 0;
  int q = 2;
  u64 state_count = 0;
  std::vector<Vertex> verts;

  static CompiledFds compile(const Fds& f, const Budget& budget);

  // Hamming displacement dH(x, f(x)) of the state with the given rank.
  int dh_at(u64 rank) const;
};

// Early-out thresholds; a scan may stop as soon as one is met. Partial results
// then only certify the threshold predicate, nothing else.
struct ScanAborts {
  int max_dh_ge = INT_MAX;
  int min_dh_le = -1;
  u64 fixed_ge = ~u64(0);
};

struct RangeResult {
  int min_dh = INT_MAX;
  u64 min_state = 0;
  int max_dh = -1;
  u64 max_state = 0;
  u64 fixed_count = 0;
  u64 first_fixed = 0;
  u64 scanned = 0;
  bool aborted = false;
};

// Fold `next` (covering the rank range right after `into`) into `into`.
// Value ties keep the earlier witness, so merge order is the rank order and
// results do not depend on the partition.
void merge_results(RangeResult& into, const RangeResult& next);

// Generic-q scalar kernel; the correctness oracle for the others.
RangeResult scan_reference(const CompiledFds& c, u64 lo, u64 hi,
                           const ScanAborts& aborts,
                           std::vector<u64>* fixed_out = nullptr);

// 64-lane bit-sliced Boolean kernel (q == 2). lo and hi must be multiples of
// 64; callers route ragged edges through the reference kernel.
RangeResult scan_bitslice64(const CompiledFds& c, u64 lo, u64 hi,
                            const ScanAborts& aborts,
                            std::vector<u64>* fixed_out = nullptr);

// 256-lane AVX2 variant; lo and hi must be multiples of 256. Only call when
// avx2_supported() is true.
bool avx2_supported();
RangeResult scan_avx2(const CompiledFds& c, u64 lo, u64 hi,
                      const ScanAborts& aborts,
                      std::vector<u64>* fixed_out = nullptr);

// True when the bit-sliced kernels apply (Boolean alphabet, supports small
// enough for the mux trees).
bool bitslice_eligible(const CompiledFds& c);

}  // namespace fdslib::kernels
