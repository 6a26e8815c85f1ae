#include <cstdlib>
#include <cstring>

#include "colossal/errors.hpp"
#include "colossal/kernels.hpp"

namespace colossal::kernels {

const char* to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool is_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(COLOSSAL_HAVE_AVX2)
  static const bool avx2 = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return avx2;
#else
  return false;
#endif
}

Isa detected_isa() { return is_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() {
  static const Isa chosen = [] {
    const char* env = std::getenv("COLOSSAL_KERNELS");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
    return detected_isa();
  }();
  return chosen;
}

namespace {

Isa checked(Isa isa) {
  if (!is_available(isa)) throw Error(ErrorKind::InvalidArgument, std::string("kernel variant unavailable: ") + to_string(isa));
  return isa;
}

}  // namespace

CompensatedSum cascade_sum(std::span<const double> xs, Isa isa) {
#if defined(COLOSSAL_HAVE_AVX2)
  if (checked(isa) == Isa::Avx2) return avx2::cascade_sum(xs);
#else
  checked(isa);
#endif
  return scalar::cascade_sum(xs);
}

ArgMax argmax_affine(std::span<const double> a, std::span<const double> b, double eps, Isa isa) {
  if (a.size() != b.size() || a.empty()) throw Error(ErrorKind::InvalidArgument, "argmax_affine: mismatched or empty spans");
#if defined(COLOSSAL_HAVE_AVX2)
  if (checked(isa) == Isa::Avx2) return avx2::argmax_affine(a, b, eps);
#else
  checked(isa);
#endif
  return scalar::argmax_affine(a, b, eps);
}

}  // namespace colossal::kernels
