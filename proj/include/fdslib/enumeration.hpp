#pragma once

#include <map>
#include <memory>

#include "fdslib/digraph.hpp"
#include "fdslib/fds.hpp"

namespace fdslib {

// True when the table (arity d over [q]) depends essentially on every input.
bool table_essential_on_all(const std::vector<value_t>& table, int d, int q);

// All truth tables of arity d over [q], in ascending table rank order; strict
// mode keeps only those essential on every input.
struct LocalSpace {
  int d = 0;
  int q = 2;
  bool strict = false;
  std::vector<std::vector<value_t>> tables;

  u64 size() const { return tables.size(); }
  static LocalSpace build(int d, int q, bool strict,
                          const Budget& budget = default_budget());
};

// F(D,q) (strict=false, supports N(v;D), all tables) or F[D,q] (strict=true).
// Function index: vertex 1's table most significant, so ascending index is
// lexicographic in the tuple of canonical table ranks.
class FunctionSpace {
 public:
  FunctionSpace(const Digraph& d, int q, bool strict,
                const Budget& budget = default_budget());

  u64 size() const { return size_; }
  int vertex_count() const { return n_; }
  int alphabet() const { return q_; }
  const LocalSpace& local_space(int v) const { return *per_vertex_.at(v - 1); }

  Fds materialize(u64 index) const;

  // Visit indices [lo, hi) in order. The same Fds object is passed every
  // call with its tables rewritten in place (no reallocation), so callers may
  // compile it once for repeated scans. Return false from fn to stop early.
  template <typename Fn>
  void for_each_range(u64 lo, u64 hi, Fn&& fn) const {
    if (lo >= hi) return;
    std::vector<u64> idx = decode(lo);
    Fds f = assemble(idx);
    for (u64 i = lo; i < hi; ++i) {
      if (!fn(static_cast<const Fds&>(f), i)) return;
      if (i + 1 == hi) break;
      // Mixed-radix increment, vertex n least significant.
      for (int v = n_; v >= 1; --v) {
        if (++idx[v - 1] < per_vertex_[v - 1]->size()) {
          copy_table(f, v, idx[v - 1]);
          break;
        }
        idx[v - 1] = 0;
        copy_table(f, v, 0);
      }
    }
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for_each_range(0, size_, std::forward<Fn>(fn));
  }

 private:
  std::vector<u64> decode(u64 index) const;
  Fds assemble(const std::vector<u64>& idx) const;
  void copy_table(Fds& f, int v, u64 table_index) const;

  int n_ = 0;
  int q_ = 2;
  bool strict_ = false;
  u64 size_ = 0;
  std::vector<std::vector<int>> supports_;
  std::vector<std::shared_ptr<const LocalSpace>> per_vertex_;
};

}  // namespace fdslib
