#include "fdslib/kernels/scan_kernels.hpp"

namespace fdslib::kernels {

CompiledFds CompiledFds::compile(const Fds& f, const Budget& budget) {
  CompiledFds c;
  c.n = f.n;
  c.q = f.q;
  c.state_count = checked_pow(static_cast<u64>(f.q),
                              static_cast<unsigned>(f.n),
                              budget.max_state_scans, "state space");
  c.verts.resize(f.n);
  for (int v = 1; v <= f.n; ++v) {
    auto& cv = c.verts[v - 1];
    const auto& lf = f.local(v);
    u64 stride = 1;
    for (int s : lf.support) {
      cv.positions.push_back(s - 1);
      cv.strides.push_back(stride);
      stride *= f.q;
    }
    cv.table = lf.table.data();
    cv.table_size = lf.table.size();
  }
  return c;
}

int CompiledFds::dh_at(u64 rank) const {
  value_t digits[64];
  u64 r = rank;
  for (int p = 0; p < n; ++p) {
    digits[p] = static_cast<value_t>(r % q);
    r /= q;
  }
  int dh = 0;
  for (int v = 0; v < n; ++v) {
    const Vertex& cv = verts[v];
    u64 idx = 0;
    for (size_t j = 0; j < cv.positions.size(); ++j)
      idx += digits[cv.positions[j]] * cv.strides[j];
    dh += cv.table[idx] != digits[v];
  }
  return dh;
}

void merge_results(RangeResult& into, const RangeResult& next) {
  if (next.min_dh < into.min_dh) {
    into.min_dh = next.min_dh;
    into.min_state = next.min_state;
  }
  if (next.max_dh > into.max_dh) {
    into.max_dh = next.max_dh;
    into.max_state = next.max_state;
  }
  if (into.fixed_count == 0 && next.fixed_count > 0)
    into.first_fixed = next.first_fixed;
  into.fixed_count += next.fixed_count;
  into.scanned += next.scanned;
  into.aborted = into.aborted || next.aborted;
}

RangeResult scan_reference(const CompiledFds& c, u64 lo, u64 hi,
                           const ScanAborts& aborts,
                           std::vector<u64>* fixed_out) {
  RangeResult r;
  if (lo >= hi) return r;

  value_t digits[64];
  u64 rest = lo;
  for (int p = 0; p < c.n; ++p) {
    digits[p] = static_cast<value_t>(rest % c.q);
    rest /= c.q;
  }

  for (u64 rank = lo; rank < hi; ++rank) {
    int dh = 0;
    for (int v = 0; v < c.n; ++v) {
      const auto& cv = c.verts[v];
      u64 idx = 0;
      for (size_t j = 0; j < cv.positions.size(); ++j)
        idx += digits[cv.positions[j]] * cv.strides[j];
      dh += cv.table[idx] != digits[v];
    }
    ++r.scanned;
    if (dh < r.min_dh) {
      r.min_dh = dh;
      r.min_state = rank;
    }
    if (dh > r.max_dh) {
      r.max_dh = dh;
      r.max_state = rank;
    }
    if (dh == 0) {
      if (r.fixed_count == 0) r.first_fixed = rank;
      ++r.fixed_count;
      if (fixed_out) fixed_out->push_back(rank);
    }
    if (r.max_dh >= aborts.max_dh_ge || r.min_dh <= aborts.min_dh_le ||
        r.fixed_count >= aborts.fixed_ge) {
      r.aborted = true;
      return r;
    }
    // Base-q odometer increment.
    for (int p = 0; p < c.n; ++p) {
      if (++digits[p] < c.q) break;
      digits[p] = 0;
    }
  }
  return r;
}

}  // namespace fdslib::kernels
