#include "fdslib/digraph.hpp"

#include <algorithm>

#include "fdslib/io.hpp"

namespace fdslib {

void Digraph::check_vertex(int v) const {
  if (v < 1 || v > n_)
    throw DomainError("vertex " + std::to_string(v) + " outside 1.." +
                      std::to_string(n_));
}

void Digraph::add_arc(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  auto& in = in_[v];
  auto it = std::lower_bound(in.begin(), in.end(), u);
  if (it != in.end() && *it == u)
    throw DomainError("duplicate arc (" + std::to_string(u) + "," +
                      std::to_string(v) + ")");
  in.insert(it, u);
  auto& out = out_[u];
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  ++arc_count_;
}

Digraph Digraph::from_arcs(int n, const std::vector<std::pair<int, int>>& arcs) {
  Digraph d(n);
  for (auto [u, v] : arcs) d.add_arc(u, v);
  return d;
}

bool Digraph::has_arc(int u, int v) const {
  if (u < 1 || u > n_ || v < 1 || v > n_) return false;
  const auto& in = in_[v];
  return std::binary_search(in.begin(), in.end(), u);
}

bool Digraph::has_any_loop() const {
  for (int v = 1; v <= n_; ++v)
    if (has_loop(v)) return true;
  return false;
}

int Digraph::max_in_degree() const {
  int m = 0;
  for (int v = 1; v <= n_; ++v) m = std::max(m, in_degree(v));
  return m;
}

std::vector<std::pair<int, int>> Digraph::arcs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(arc_count_);
  for (int u = 1; u <= n_; ++u)
    for (int v : out_[u]) out.emplace_back(u, v);
  return out;
}

bool Digraph::operator==(const Digraph& other) const {
  return n_ == other.n_ && in_ == other.in_;
}

u64 Digraph::hash() const {
  const std::string text = write_digraph_text(*this);
  u64 h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace fdslib
