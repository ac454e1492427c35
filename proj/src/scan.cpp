#include "fdslib/scan.hpp"

#include <algorithm>
#include <thread>

namespace fdslib {

using kernels::CompiledFds;
using kernels::RangeResult;

namespace {

ScanKernel pick_kernel(const CompiledFds& c, const ScanOptions& opts) {
  if (opts.kernel != ScanKernel::Auto) return opts.kernel;
  if (!kernels::bitslice_eligible(c)) return ScanKernel::Reference;
  if (c.state_count >= 256 && kernels::avx2_supported()) return ScanKernel::Avx2;
  if (c.state_count >= 64) return ScanKernel::Bitslice64;
  return ScanKernel::Reference;
}

RangeResult run_range(const CompiledFds& c, ScanKernel k, u64 lo, u64 hi,
                      const kernels::ScanAborts& aborts,
                      std::vector<u64>* fixed_out) {
  if (k == ScanKernel::Reference)
    return kernels::scan_reference(c, lo, hi, aborts, fixed_out);

  // Bit-sliced kernels need aligned full blocks; ragged edges go through the
  // reference kernel, in rank order so witness merging stays trivial.
  const u64 block = k == ScanKernel::Avx2 ? 256 : 64;
  u64 lo_aligned = (lo + block - 1) / block * block;
  u64 hi_aligned = hi / block * block;
  RangeResult r;
  if (lo_aligned >= hi_aligned)
    return kernels::scan_reference(c, lo, hi, aborts, fixed_out);
  r = kernels::scan_reference(c, lo, lo_aligned, aborts, fixed_out);
  if (r.aborted) return r;
  RangeResult mid =
      k == ScanKernel::Avx2
          ? kernels::scan_avx2(c, lo_aligned, hi_aligned, aborts, fixed_out)
          : kernels::scan_bitslice64(c, lo_aligned, hi_aligned, aborts,
                                     fixed_out);
  kernels::merge_results(r, mid);
  if (r.aborted) return r;
  RangeResult tail =
      kernels::scan_reference(c, hi_aligned, hi, aborts, fixed_out);
  kernels::merge_results(r, tail);
  return r;
}

RangeResult scan_compiled(const CompiledFds& c, const ScanOptions& opts,
                          std::vector<u64>* fixed_out) {
  ScanKernel k = pick_kernel(c, opts);
  const u64 total = c.state_count;
  int workers = std::max(1, opts.workers);
  if (workers == 1 || total < 4096 || fixed_out != nullptr)
    return run_range(c, k, 0, total, opts.aborts, fixed_out);

  // Partition the rank range; merge in rank order so the result is identical
  // for every worker count.
  const u64 align = 256;
  std::vector<std::pair<u64, u64>> ranges;
  u64 chunk = (total / workers + align) / align * align;
  for (u64 lo = 0; lo < total; lo += chunk)
    ranges.emplace_back(lo, std::min(total, lo + chunk));
  std::vector<RangeResult> results(ranges.size());
  std::vector<std::thread> pool;
  for (size_t i = 0; i < ranges.size(); ++i)
    pool.emplace_back([&, i] {
      results[i] =
          run_range(c, k, ranges[i].first, ranges[i].second, opts.aborts,
                    nullptr);
    });
  for (auto& t : pool) t.join();
  RangeResult r = results[0];
  for (size_t i = 1; i < results.size(); ++i)
    kernels::merge_results(r, results[i]);
  return r;
}

}  // namespace

ScanStats scan_states(const Fds& f, const ScanOptions& opts) {
  CompiledFds c = CompiledFds::compile(f, opts.budget);
  return scan_compiled(c, opts, nullptr);
}

ScanStats scan_precompiled(const CompiledFds& c,
                           const kernels::ScanAborts& aborts,
                           ScanKernel kernel) {
  ScanOptions opts;
  opts.aborts = aborts;
  opts.kernel = kernel;
  ScanKernel k = pick_kernel(c, opts);
  return run_range(c, k, 0, c.state_count, aborts, nullptr);
}

ValueWitness stability(const Fds& f, const ScanOptions& opts) {
  ScanStats s = scan_states(f, opts);
  // s(f) = min_x { n - dH(x, f(x)) }; the witness maximizes dH.
  return {f.n - s.max_dh, state_from_rank(s.max_state, f.n, f.q)};
}

ValueWitness instability(const Fds& f, const ScanOptions& opts) {
  ScanStats s = scan_states(f, opts);
  return {s.min_dh, state_from_rank(s.min_state, f.n, f.q)};
}

std::vector<u64> fixed_points(const Fds& f, const ScanOptions& opts) {
  CompiledFds c = CompiledFds::compile(f, opts.budget);
  std::vector<u64> out;
  scan_compiled(c, opts, &out);
  return out;
}

std::vector<u64> guessing_code(const Fds& f, const Budget& budget) {
  const u64 total = checked_pow(static_cast<u64>(f.q),
                                static_cast<unsigned>(f.n),
                                budget.max_state_scans, "state space");
  StateVector zero = state_from_rank(0, f.n, f.q);
  StateVector f_zero = evaluate(f, zero);
  std::vector<u64> code;
  code.reserve(total);
  StateVector x = zero;
  for (u64 rank = 0; rank < total; ++rank) {
    StateVector y = evaluate(f, x);
    StateVector diff;
    diff.q = f.q;
    diff.coords.resize(f.n);
    for (int v = 0; v < f.n; ++v) {
      int phi = (y.coords[v] - f_zero.coords[v] + f.q) % f.q;
      diff.coords[v] =
          static_cast<value_t>((phi - x.coords[v] + f.q) % f.q);
    }
    code.push_back(diff.rank());
    for (int p = 0; p < f.n; ++p) {
      if (++x.coords[p] < f.q) break;
      x.coords[p] = 0;
    }
  }
  std::sort(code.begin(), code.end());
  code.erase(std::unique(code.begin(), code.end()), code.end());
  return code;
}

}  // namespace fdslib
