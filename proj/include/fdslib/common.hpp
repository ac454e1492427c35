#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace fdslib {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Alphabet values live in [q] = {0, .., q-1}. q is capped at 2^16 so a table
// entry always fits; everything ranked (states, table indices) uses u64.
using value_t = std::uint16_t;
inline constexpr int kMaxAlphabet = std::numeric_limits<value_t>::max();

// Input that cannot be parsed (graph files, FDS JSON, CLI values).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration or scan would exceed the configured budget. Budgets are hard
// errors, never silent truncation.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// A precondition on an operation's arguments does not hold.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct Budget {
  u64 max_state_scans = u64(1) << 26;      // per-call cap on q^n state scans
  u64 max_function_visits = u64(1) << 31;  // per-call cap on function-space size
  int max_tau_vertices = 20;               // exact feedback-number search cap
  int max_sigma_vertices = 24;             // exact sigma search cap
  int workers = 1;                         // worker threads for partitioned scans
};

inline const Budget& default_budget() {
  static const Budget b{};
  return b;
}

// base^exp, throwing BudgetError past `cap` instead of wrapping.
inline u64 checked_pow(u64 base, unsigned exp, u64 cap,
                       const char* what = "power") {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base)
      throw BudgetError(std::string(what) + " exceeds budget");
    r *= base;
  }
  if (r > cap) throw BudgetError(std::string(what) + " exceeds budget");
  return r;
}

// splitmix64; used wherever a seed-keyed, label-stable order is needed.
inline u64 mix64(u64 x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace fdslib
