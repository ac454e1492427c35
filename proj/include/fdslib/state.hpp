#pragma once

#include <vector>

#include "fdslib/common.hpp"

namespace fdslib {

// A point x in [q]^n. Coordinate v (1-based) is coords[v-1]; the rank is
// sum coords[v-1] * q^(v-1), so coordinate 1 is the least significant digit.
struct StateVector {
  int q = 2;
  std::vector<value_t> coords;

  int size() const { return static_cast<int>(coords.size()); }
  u64 rank() const;
  bool operator==(const StateVector&) const = default;
};

StateVector state_from_rank(u64 rank, int n, int q);

u64 state_rank(const std::vector<value_t>& coords, int q);

// |{v : x_v != y_v}| and the set itself. Throws on dimension mismatch.
int hamming(const StateVector& x, const StateVector& y);
std::vector<int> delta_set(const StateVector& x, const StateVector& y);

}  // namespace fdslib
