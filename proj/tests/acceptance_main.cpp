// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run directly or through ctest.

#include <iostream>

#include "fdslib/verify.hpp"

int main(int argc, char** argv) {
  std::string suite = argc > 1 ? argv[1] : "all";
  int max_n = argc > 2 ? std::atoi(argv[2]) : 4;
  auto results = fdslib::run_acceptance(suite, max_n, std::cout);
  int failures = 0;
  for (const auto& r : results) failures += !r.pass;
  std::cout << results.size() - failures << "/" << results.size()
            << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
