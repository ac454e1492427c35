#include <bit>

#include "fdslib/kernels/scan_kernels.hpp"

// AVX2 build of the bit-sliced kernel: 256 states per iteration. Same
// structure as the 64-lane version; only the word type widens.

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace fdslib::kernels {

namespace {

constexpr u64 kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

struct PackedVertex {
  std::vector<u64> bits;
  const std::vector<int>* positions;
  int d = 0;
};

struct SlicerAvx2 {
  const CompiledFds& c;
  std::vector<PackedVertex> packed;
  __m256i input[64];

  __attribute__((target("avx2"))) explicit SlicerAvx2(const CompiledFds& cf)
      : c(cf) {
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

  __attribute__((target("avx2"))) void load_block(u64 base) {
    const __m256i ones = _mm256_set1_epi64x(-1);
    const __m256i zero = _mm256_setzero_si256();
    for (int p = 0; p < c.n; ++p) {
      if (p < 6) {
        input[p] = _mm256_set1_epi64x(static_cast<long long>(kLanePattern[p]));
      } else if (p == 6) {
        input[p] = _mm256_set_epi64x(-1, 0, -1, 0);
      } else if (p == 7) {
        input[p] = _mm256_set_epi64x(-1, -1, 0, 0);
      } else {
        input[p] = ((base >> p) & 1) ? ones : zero;
      }
    }
  }

  u64 table_bit(const PackedVertex& pv, u64 idx) const {
    return (pv.bits[idx >> 6] >> (idx & 63)) & 1;
  }

  __attribute__((target("avx2"))) __m256i eval(const PackedVertex& pv,
                                               int level, u64 base_idx) const {
    if (level == 0)
      return table_bit(pv, base_idx) ? _mm256_set1_epi64x(-1)
                                     : _mm256_setzero_si256();
    __m256i sel = input[(*pv.positions)[level - 1]];
    if (level == 1) {
      u64 b0 = table_bit(pv, base_idx);
      u64 b1 = table_bit(pv, base_idx + 1);
      if (b0 == b1)
        return b0 ? _mm256_set1_epi64x(-1) : _mm256_setzero_si256();
      return b1 ? sel : _mm256_xor_si256(sel, _mm256_set1_epi64x(-1));
    }
    __m256i lo = eval(pv, level - 1, base_idx);
    __m256i hi = eval(pv, level - 1, base_idx + (u64(1) << (level - 1)));
    return _mm256_or_si256(_mm256_and_si256(sel, hi),
                           _mm256_andnot_si256(sel, lo));
  }
};

int count_at_lane256(const u64 cnt[][4], int bits, int lane) {
  int v = 0;
  for (int j = 0; j < bits; ++j)
    v |= static_cast<int>((cnt[j][lane >> 6] >> (lane & 63)) & 1) << j;
  return v;
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

__attribute__((target("avx2")))
RangeResult scan_avx2(const CompiledFds& c, u64 lo, u64 hi,
                      const ScanAborts& aborts, std::vector<u64>* fixed_out) {
  RangeResult r;
  if (lo >= hi) return r;
  SlicerAvx2 sl(c);
  const int bits = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(c.n))));
  const __m256i all_ones = _mm256_set1_epi64x(-1);

  for (u64 base = lo; base < hi; base += 256) {
    sl.load_block(base);
    __m256i cnt[7];
    for (auto& w : cnt) w = _mm256_setzero_si256();
    __m256i any_mismatch = _mm256_setzero_si256();
    for (size_t v = 0; v < sl.packed.size(); ++v) {
      const auto& pv = sl.packed[v];
      __m256i out = sl.eval(pv, pv.d, 0);
      __m256i m = _mm256_xor_si256(out, sl.input[v]);
      any_mismatch = _mm256_or_si256(any_mismatch, m);
      __m256i carry = m;
      for (int j = 0; j < 7; ++j) {
        __m256i t = _mm256_xor_si256(cnt[j], carry);
        carry = _mm256_and_si256(cnt[j], carry);
        cnt[j] = t;
        if (_mm256_testz_si256(carry, carry)) break;
      }
    }
    r.scanned += 256;

    alignas(32) u64 cnt_w[7][4];
    for (int j = 0; j < bits; ++j)
      _mm256_store_si256(reinterpret_cast<__m256i*>(cnt_w[j]), cnt[j]);

    __m256i fixed = _mm256_xor_si256(any_mismatch, all_ones);
    if (!_mm256_testz_si256(fixed, fixed)) {
      alignas(32) u64 fw[4];
      _mm256_store_si256(reinterpret_cast<__m256i*>(fw), fixed);
      for (int w = 0; w < 4; ++w)
        for (u64 m = fw[w]; m != 0; m &= m - 1) {
          u64 rank = base + w * 64 + std::countr_zero(m);
          if (r.fixed_count == 0) r.first_fixed = rank;
          ++r.fixed_count;
          if (fixed_out) fixed_out->push_back(rank);
        }
    }

    __m256i better_max;
    if (r.max_dh < 0) {
      better_max = all_ones;
    } else if (r.max_dh >= c.n) {
      better_max = _mm256_setzero_si256();
    } else {
      __m256i gt = _mm256_setzero_si256(), eq = all_ones;
      for (int j = bits - 1; j >= 0; --j) {
        __m256i mb = ((static_cast<unsigned>(r.max_dh) >> j) & 1)
                         ? all_ones
                         : _mm256_setzero_si256();
        gt = _mm256_or_si256(gt,
                             _mm256_and_si256(eq, _mm256_andnot_si256(mb, cnt[j])));
        eq = _mm256_and_si256(
            eq, _mm256_xor_si256(_mm256_xor_si256(cnt[j], mb), all_ones));
      }
      better_max = gt;
    }
    if (!_mm256_testz_si256(better_max, better_max)) {
      alignas(32) u64 mw[4];
      _mm256_store_si256(reinterpret_cast<__m256i*>(mw), better_max);
      for (int w = 0; w < 4; ++w)
        for (u64 m = mw[w]; m != 0; m &= m - 1) {
          int lane = w * 64 + std::countr_zero(m);
          int dh = count_at_lane256(cnt_w, bits, lane);
          if (dh > r.max_dh) {
            r.max_dh = dh;
            r.max_state = base + lane;
          }
        }
    }

    __m256i better_min;
    if (r.min_dh <= 0) {
      better_min = _mm256_setzero_si256();
    } else if (r.min_dh > c.n) {
      better_min = all_ones;
    } else {
      __m256i lt = _mm256_setzero_si256(), eq = all_ones;
      for (int j = bits - 1; j >= 0; --j) {
        __m256i mb = ((static_cast<unsigned>(r.min_dh) >> j) & 1)
                         ? all_ones
                         : _mm256_setzero_si256();
        lt = _mm256_or_si256(lt,
                             _mm256_and_si256(eq, _mm256_andnot_si256(cnt[j], mb)));
        eq = _mm256_and_si256(
            eq, _mm256_xor_si256(_mm256_xor_si256(cnt[j], mb), all_ones));
      }
      better_min = lt;
    }
    if (!_mm256_testz_si256(better_min, better_min)) {
      alignas(32) u64 mw[4];
      _mm256_store_si256(reinterpret_cast<__m256i*>(mw), better_min);
      for (int w = 0; w < 4; ++w)
        for (u64 m = mw[w]; m != 0; m &= m - 1) {
          int lane = w * 64 + std::countr_zero(m);
          int dh = count_at_lane256(cnt_w, bits, lane);
          if (dh < r.min_dh) {
            r.min_dh = dh;
            r.min_state = base + lane;
          }
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

#else  // non-x86: never selected at runtime

namespace fdslib::kernels {
bool avx2_supported() { return false; }
RangeResult scan_avx2(const CompiledFds&, u64, u64, const ScanAborts&,
                      std::vector<u64>*) {
  throw std::logic_error("AVX2 kernel unavailable on this platform");
}
}  // namespace fdslib::kernels

#endif
