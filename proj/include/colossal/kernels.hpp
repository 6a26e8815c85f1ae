#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation and, where the build and CPU allow it, an AVX2 variant
// picked at runtime. The variants are interchangeable: argmax_affine is
// bit-identical across variants, cascade_sum agrees within the returned
// error bounds.

#include <cstddef>
#include <span>

namespace colossal::kernels {

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);

/// Best variant compiled in and supported by this CPU.
Isa detected_isa();

/// detected_isa(), unless COLOSSAL_KERNELS=scalar forces the reference path.
Isa active_isa();

bool is_available(Isa isa);

/// Sum as an unevaluated pair hi + lo with |exact - (hi + lo)| <= error_bound.
struct CompensatedSum {
  double hi = 0.0;
  double lo = 0.0;
  double error_bound = 0.0;
};

/// Cascaded TwoSum summation: rounding errors of the running sum are captured
/// exactly and summed separately.
CompensatedSum cascade_sum(std::span<const double> xs, Isa isa = active_isa());

struct ArgMax {
  std::size_t index = 0;
  double value = 0.0;
};

/// max_i fma(-eps, b[i], a[i]); ties go to the smallest index.
/// a and b must have equal, nonzero length.
ArgMax argmax_affine(std::span<const double> a, std::span<const double> b, double eps,
                     Isa isa = active_isa());

namespace scalar {
CompensatedSum cascade_sum(std::span<const double> xs);
ArgMax argmax_affine(std::span<const double> a, std::span<const double> b, double eps);
}  // namespace scalar

namespace avx2 {
CompensatedSum cascade_sum(std::span<const double> xs);
ArgMax argmax_affine(std::span<const double> a, std::span<const double> b, double eps);
}  // namespace avx2

/// Error bound for a cascade of n additions whose captured errors have
/// absolute sum `abs_errors` (shared by both variants).
double cascade_error_bound(std::size_t n, double abs_errors);

}  // namespace colossal::kernels
