#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fdslib {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "num/den" in lowest terms, the serialization used by JSON and CSV output.
inline std::string rational_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace fdslib
