#include <bit>

#include "fdslib/kernels/scan_kernels.hpp"

// 64 consecutive state ranks per iteration, one lane per state. Coordinate p
// of lane j is bit p of (base + j): a fixed pattern for p < 6 and a constant
// for p >= 6 when base is 64-aligned. Local functions are evaluated as mux
// trees over their packed truth tables, mismatches are accumulated in vertical
// (carry-save) counters, and min/max/fixed lanes are extracted only when a
// comparator mask says the block can improve the running result.

namespace fdslib::kernels {

namespace {

constexpr u64 kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

struct PackedVertex {
  std::vector<u64> bits;            // truth table, one bit per entry
  const std::vector<int>* positions;
  int d = 0;
};

struct Slicer {
  const CompiledFds& c;
  std::vector<PackedVertex> packed;
  u64 input[64];

  explicit Slicer(const CompiledFds& cf) : c(cf) {
    packed.resize(c.verts.size());
    for (size_t v = 0; v < c.verts.size(); ++v) {
      const auto& cv = c.verts[v];
      auto& pv = packed[v];
      pv.positions = &cv.positions;
      pv.d = static_cast<int>(cv.positions.size());
      pv.bits.assign((cv.table_size + 63) / 64, 0);
      for (u64 i = 0; i < cv.table_size; ++i)
        if (cv.table[i]) pv.bits[i >> 6] |= u64(1) << (i & 63);
    }
  }

  void load_block(u64 base) {
    for (int p = 0; p < c.n; ++p)
      input[p] = p < 6 ? kLanePattern[p] : (((base >> p) & 1) ? ~u64(0) : 0);
  }

  u64 table_bit(const PackedVertex& pv, u64 idx) const {
    return (pv.bits[idx >> 6] >> (idx & 63)) & 1;
  }

  u64 eval(const PackedVertex& pv, int level, u64 base_idx) const {
    if (level == 0) return table_bit(pv, base_idx) ? ~u64(0) : 0;
    u64 sel = input[(*pv.positions)[level - 1]];
    if (level == 1) {
      u64 b0 = table_bit(pv, base_idx);
      u64 b1 = table_bit(pv, base_idx + 1);
      if (b0 == b1) return b0 ? ~u64(0) : 0;
      return b1 ? sel : ~sel;
    }
    u64 lo = eval(pv, level - 1, base_idx);
    u64 hi = eval(pv, level - 1, base_idx + (u64(1) << (level - 1)));
    return (sel & hi) | (~sel & lo);
  }
};

int count_at_lane(const u64* cnt, int bits, int lane) {
  int v = 0;
  for (int j = 0; j < bits; ++j) v |= static_cast<int>((cnt[j] >> lane) & 1) << j;
  return v;
}

}  // namespace

bool bitslice_eligible(const CompiledFds& c) {
  if (c.q != 2 || c.n < 1 || c.n > 63) return false;
  for (const auto& cv : c.verts)
    if (cv.positions.size() > 8) return false;
  return true;
}

RangeResult scan_bitslice64(const CompiledFds& c, u64 lo, u64 hi,
                            const ScanAborts& aborts,
                            std::vector<u64>* fixed_out) {
  RangeResult r;
  if (lo >= hi) return r;
  Slicer sl(c);
  const int bits = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(c.n))));

  for (u64 base = lo; base < hi; base += 64) {
    sl.load_block(base);
    u64 cnt[7] = {0, 0, 0, 0, 0, 0, 0};
    u64 any_mismatch = 0;
    for (size_t v = 0; v < sl.packed.size(); ++v) {
      const auto& pv = sl.packed[v];
      u64 out = sl.eval(pv, pv.d, 0);
      u64 m = out ^ sl.input[v];
      any_mismatch |= m;
      u64 carry = m;
      for (int j = 0; carry != 0; ++j) {
        u64 t = cnt[j] ^ carry;
        carry = cnt[j] & carry;
        cnt[j] = t;
      }
    }
    r.scanned += 64;

    u64 fixed = ~any_mismatch;
    if (fixed) {
      if (r.fixed_count == 0)
        r.first_fixed = base + std::countr_zero(fixed);
      r.fixed_count += std::popcount(fixed);
      if (fixed_out)
        for (u64 m = fixed; m != 0; m &= m - 1)
          fixed_out->push_back(base + std::countr_zero(m));
    }

    // Lanes whose count beats the running max (unsigned comparator circuit).
    u64 better_max;
    if (r.max_dh < 0) {
      better_max = ~u64(0);
    } else if (r.max_dh >= c.n) {
      better_max = 0;
    } else {
      u64 gt = 0, eq = ~u64(0);
      for (int j = bits - 1; j >= 0; --j) {
        u64 mb = ((static_cast<unsigned>(r.max_dh) >> j) & 1) ? ~u64(0) : 0;
        gt |= eq & cnt[j] & ~mb;
        eq &= ~(cnt[j] ^ mb);
      }
      better_max = gt;
    }
    for (u64 m = better_max; m != 0; m &= m - 1) {
      int lane = std::countr_zero(m);
      int dh = count_at_lane(cnt, bits, lane);
      if (dh > r.max_dh) {
        r.max_dh = dh;
        r.max_state = base + lane;
      }
    }

    u64 better_min;
    if (r.min_dh <= 0) {
      better_min = 0;
    } else if (r.min_dh > c.n) {
      better_min = ~u64(0);
    } else {
      u64 lt = 0, eq = ~u64(0);
      for (int j = bits - 1; j >= 0; --j) {
        u64 mb = ((static_cast<unsigned>(r.min_dh) >> j) & 1) ? ~u64(0) : 0;
        lt |= eq & ~cnt[j] & mb;
        eq &= ~(cnt[j] ^ mb);
      }
      better_min = lt;
    }
    for (u64 m = better_min; m != 0; m &= m - 1) {
      int lane = std::countr_zero(m);
      int dh = count_at_lane(cnt, bits, lane);
      if (dh < r.min_dh) {
        r.min_dh = dh;
        r.min_state = base + lane;
      }
    }

    if (r.max_dh >= aborts.max_dh_ge || r.min_dh <= aborts.min_dh_le ||
        r.fixed_count >= aborts.fixed_ge) {
      r.aborted = true;
      return r;
    }
  }
  return r;
}

}  // namespace fdslib::kernels
