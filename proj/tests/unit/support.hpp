#pragma once

#include <string>

#include "colossal/ext_real.hpp"

namespace colossal::testing {

// |x - reference| <= tol + radius(x), reference given as a decimal string.
inline bool near(const ExtReal& x, const std::string& reference, double tol) {
  const ExtReal ref = ExtReal::parse(reference, "0", 256);
  const ExtReal d = x.rounded_to(256) - ref;
  const double err = d.approx() < 0 ? -d.approx() : d.approx();
  return err <= tol + x.radius();
}

// The interval of x contains the reference (within tol for its own rounding).
inline bool encloses(const ExtReal& x, const std::string& reference, double tol = 0.0) {
  ExtReal ref = ExtReal::parse(reference, "0", 256);
  ref.widen(tol);
  return compare(x.rounded_to(256), ref) == IntervalOrder::Overlap;
}

}  // namespace colossal::testing
