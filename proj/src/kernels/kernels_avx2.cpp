// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma and
// only entered after the dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "colossal/kernels.hpp"

namespace colossal::kernels::avx2 {

namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

}  // namespace

CompensatedSum cascade_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  const double* p = xs.data();
  __m256d s = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();
  __m256d c_abs = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(p + i);
    const __m256d t = _mm256_add_pd(s, x);
    const __m256d bb = _mm256_sub_pd(t, s);
    const __m256d e = _mm256_add_pd(_mm256_sub_pd(s, _mm256_sub_pd(t, bb)), _mm256_sub_pd(x, bb));
    s = t;
    c = _mm256_add_pd(c, e);
    c_abs = _mm256_add_pd(c_abs, abs_pd(e));
  }

  alignas(32) double ls[4], lc[4], la[4];
  _mm256_store_pd(ls, s);
  _mm256_store_pd(lc, c);
  _mm256_store_pd(la, c_abs);

  // Fold lanes and the tail with the same TwoSum recurrence.
  double acc = ls[0], comp = lc[0] + lc[1] + lc[2] + lc[3];
  double comp_abs = la[0] + la[1] + la[2] + la[3];
  auto push = [&](double x) {
    const double t = acc + x;
    const double bb = t - acc;
    const double e = (acc - (t - bb)) + (x - bb);
    acc = t;
    comp += e;
    comp_abs += std::fabs(e);
  };
  push(ls[1]);
  push(ls[2]);
  push(ls[3]);
  for (; i < n; ++i) push(p[i]);

  const double hi = acc + comp;
  const double bb = hi - acc;
  const double lo = (acc - (hi - bb)) + (comp - bb);
  return {hi, lo, cascade_error_bound(n + 8, comp_abs)};
}

ArgMax argmax_affine(std::span<const double> a, std::span<const double> b, double eps) {
  const std::size_t n = a.size();
  const __m256d eps_v = _mm256_set1_pd(eps);
  __m256d best = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256d best_idx = _mm256_setzero_pd();
  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // -(eps * b) + a, single rounding: matches std::fma(-eps, b, a).
    const __m256d v = _mm256_fnmadd_pd(eps_v, _mm256_loadu_pd(b.data() + i), _mm256_loadu_pd(a.data() + i));
    const __m256d gt = _mm256_cmp_pd(v, best, _CMP_GT_OQ);
    best = _mm256_blendv_pd(best, v, gt);
    best_idx = _mm256_blendv_pd(best_idx, idx, gt);
    idx = _mm256_add_pd(idx, four);
  }

  alignas(32) double lv[4], li[4];
  _mm256_store_pd(lv, best);
  _mm256_store_pd(li, best_idx);
  ArgMax out{0, -std::numeric_limits<double>::infinity()};
  for (int lane = 0; lane < 4; ++lane) {
    const auto lane_idx = static_cast<std::size_t>(li[lane]);
    if (lv[lane] > out.value || (lv[lane] == out.value && lane_idx < out.index)) out = {lane_idx, lv[lane]};
  }
  for (; i < n; ++i) {
    const double v = std::fma(-eps, b[i], a[i]);
    if (v > out.value) out = {i, v};
  }
  return out;
}

}  // namespace colossal::kernels::avx2
