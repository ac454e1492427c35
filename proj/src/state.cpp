#include "fdslib/state.hpp"

namespace fdslib {

u64 state_rank(const std::vector<value_t>& coords, int q) {
  u64 r = 0;
  for (size_t i = coords.size(); i-- > 0;) r = r * q + coords[i];
  return r;
}

u64 StateVector::rank() const { return state_rank(coords, q); }

StateVector state_from_rank(u64 rank, int n, int q) {
  StateVector x;
  x.q = q;
  x.coords.resize(n);
  for (int v = 0; v < n; ++v) {
    x.coords[v] = static_cast<value_t>(rank % q);
    rank /= q;
  }
  return x;
}

static void check_same_shape(const StateVector& x, const StateVector& y) {
  if (x.q != y.q || x.coords.size() != y.coords.size())
    throw DomainError("state dimension/alphabet mismatch");
}

int hamming(const StateVector& x, const StateVector& y) {
  check_same_shape(x, y);
  int d = 0;
  for (size_t i = 0; i < x.coords.size(); ++i) d += x.coords[i] != y.coords[i];
  return d;
}

std::vector<int> delta_set(const StateVector& x, const StateVector& y) {
  check_same_shape(x, y);
  std::vector<int> delta;
  for (size_t i = 0; i < x.coords.size(); ++i)
    if (x.coords[i] != y.coords[i]) delta.push_back(static_cast<int>(i) + 1);
  return delta;
}

}  // namespace fdslib
