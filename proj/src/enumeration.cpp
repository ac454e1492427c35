#include "fdslib/enumeration.hpp"

#include <algorithm>

namespace fdslib {

bool table_essential_on_all(const std::vector<value_t>& table, int d, int q) {
  u64 stride = 1;
  for (int j = 0; j < d; ++j, stride *= q) {
    bool found = false;
    for (u64 idx = 0; idx < table.size() && !found; ++idx) {
      if ((idx / stride) % q != 0) continue;
      value_t first = table[idx];
      for (int a = 1; a < q; ++a)
        if (table[idx + stride * a] != first) {
          found = true;
          break;
        }
    }
    if (!found) return false;
  }
  return true;
}

LocalSpace LocalSpace::build(int d, int q, bool strict, const Budget& budget) {
  if (d < 0 || q < 2 || q > kMaxAlphabet)
    throw DomainError("local space: bad arity or alphabet");
  const u64 entries = checked_pow(static_cast<u64>(q),
                                  static_cast<unsigned>(d),
                                  budget.max_function_visits, "table size");
  const u64 count =
      checked_pow(static_cast<u64>(q), static_cast<unsigned>(entries),
                  budget.max_function_visits, "local space size");
  LocalSpace ls;
  ls.d = d;
  ls.q = q;
  ls.strict = strict;
  std::vector<value_t> table(entries, 0);
  for (u64 rank = 0; rank < count; ++rank) {
    if (!strict || table_essential_on_all(table, d, q)) ls.tables.push_back(table);
    for (u64 e = 0; e < entries; ++e) {
      if (++table[e] < q) break;
      table[e] = 0;
    }
  }
  return ls;
}

FunctionSpace::FunctionSpace(const Digraph& d, int q, bool strict,
                             const Budget& budget)
    : n_(d.vertex_count()), q_(q), strict_(strict) {
  if (n_ < 1) throw DomainError("function space: empty vertex set");
  std::map<int, std::shared_ptr<const LocalSpace>> by_degree;
  size_ = 1;
  for (int v = 1; v <= n_; ++v) {
    supports_.push_back(d.in_neighbours(v));
    int deg = d.in_degree(v);
    auto it = by_degree.find(deg);
    if (it == by_degree.end())
      it = by_degree
               .emplace(deg, std::make_shared<LocalSpace>(
                                 LocalSpace::build(deg, q, strict, budget)))
               .first;
    per_vertex_.push_back(it->second);
    u64 s = it->second->size();
    if (s == 0) throw DomainError("function space: empty local space");
    if (size_ > budget.max_function_visits / s)
      throw BudgetError("function space size exceeds budget");
    size_ *= s;
  }
}

std::vector<u64> FunctionSpace::decode(u64 index) const {
  std::vector<u64> idx(n_);
  for (int v = n_; v >= 1; --v) {
    u64 s = per_vertex_[v - 1]->size();
    idx[v - 1] = index % s;
    index /= s;
  }
  return idx;
}

Fds FunctionSpace::assemble(const std::vector<u64>& idx) const {
  Fds f;
  f.n = n_;
  f.q = q_;
  f.locals.resize(n_);
  for (int v = 1; v <= n_; ++v) {
    f.locals[v - 1].support = supports_[v - 1];
    f.locals[v - 1].table = per_vertex_[v - 1]->tables[idx[v - 1]];
  }
  return f;
}

void FunctionSpace::copy_table(Fds& f, int v, u64 table_index) const {
  const auto& src = per_vertex_[v - 1]->tables[table_index];
  std::copy(src.begin(), src.end(), f.locals[v - 1].table.begin());
}

Fds FunctionSpace::materialize(u64 index) const {
  if (index >= size_) throw DomainError("function index out of range");
  return assemble(decode(index));
}

}  // namespace fdslib
