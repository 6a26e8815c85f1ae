#include <cmath>
#include <limits>

#include "colossal/kernels.hpp"

namespace colossal::kernels {

double cascade_error_bound(std::size_t n, double abs_errors) {
  // gamma_n = n u / (1 - n u) with u = 2^-53, doubled to cover the rounding
  // of abs_errors itself.
  const double nu = static_cast<double>(n + 4) * 0x1p-53;
  return std::nextafter(2.0 * nu / (1.0 - nu) * abs_errors, std::numeric_limits<double>::infinity());
}

namespace scalar {

CompensatedSum cascade_sum(std::span<const double> xs) {
  double s = 0.0, c = 0.0, c_abs = 0.0;
  for (const double x : xs) {
    const double t = s + x;
    const double bb = t - s;
    const double e = (s - (t - bb)) + (x - bb);
    s = t;
    c += e;
    c_abs += std::fabs(e);
  }
  const double hi = s + c;
  const double bb = hi - s;
  const double lo = (s - (hi - bb)) + (c - bb);
  return {hi, lo, cascade_error_bound(xs.size(), c_abs)};
}

ArgMax argmax_affine(std::span<const double> a, std::span<const double> b, double eps) {
  ArgMax best{0, -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double v = std::fma(-eps, b[i], a[i]);
    if (v > best.value) best = {i, v};
  }
  return best;
}

}  // namespace scalar
}  // namespace colossal::kernels
