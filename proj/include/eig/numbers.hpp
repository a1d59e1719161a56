#ifndef EIG_NUMBERS_HPP
#define EIG_NUMBERS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace eig {

// All index arithmetic is exact: arbitrary-precision integers for end
// indices, rationals for cocycle values and linear algebra.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Int& n) { return n.str(); }

inline std::string to_string(const Rat& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace eig

#endif
