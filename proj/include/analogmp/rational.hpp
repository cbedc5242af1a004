#pragma once

// Exact rational weights for the algebraic law suites and the group-simplex
// module, where fixed-point checks must be exact rather than tolerance-based.

#include <boost/rational.hpp>

#include "analogmp/measure.hpp"

namespace analogmp {

using Rat = boost::rational<long long>;

template <>
struct WeightTraits<Rat> {
  static Rat zero_tol() { return Rat(0); }
  static Rat mass_tol() { return Rat(0); }
  static double to_double(const Rat& w) {
    return static_cast<double>(w.numerator()) /
           static_cast<double>(w.denominator());
  }
};

}  // namespace analogmp
