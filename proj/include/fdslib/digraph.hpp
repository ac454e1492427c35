#pragma once

#include <utility>
#include <vector>

#include "fdslib/common.hpp"

namespace fdslib {

// Directed graph on vertices 1..n, loops allowed, duplicate arcs rejected.
// Storage is in-neighbourhood-centric (the paper's N(v;D) is the primary
// object); out-lists are kept in step for the traversal algorithms.
// Treat instances as immutable once built; they are safe to share across
// threads.
class Digraph {
 public:
  Digraph() : Digraph(0) {}
  explicit Digraph(int n) : n_(n), in_(n + 1), out_(n + 1) {}

  static Digraph from_arcs(int n, const std::vector<std::pair<int, int>>& arcs);

  int vertex_count() const { return n_; }
  int arc_count() const { return arc_count_; }

  // Arc (u,v): u -> v. Throws DomainError on range errors or duplicates.
  void add_arc(int u, int v);

  bool has_arc(int u, int v) const;
  bool has_loop(int v) const { return has_arc(v, v); }
  bool has_any_loop() const;

  const std::vector<int>& in_neighbours(int v) const { return in_.at(v); }
  const std::vector<int>& out_neighbours(int v) const { return out_.at(v); }
  int in_degree(int v) const { return static_cast<int>(in_.at(v).size()); }
  int out_degree(int v) const { return static_cast<int>(out_.at(v).size()); }
  int max_in_degree() const;

  // All arcs as (u,v) pairs, sorted lexicographically.
  std::vector<std::pair<int, int>> arcs() const;

  bool operator==(const Digraph& other) const;
  bool operator!=(const Digraph& other) const { return !(*this == other); }

  // FNV-1a over the canonical text form; used as the D-hash in reports.
  u64 hash() const;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  int arc_count_ = 0;
  std::vector<std::vector<int>> in_;   // sorted
  std::vector<std::vector<int>> out_;  // sorted
};

}  // namespace fdslib
