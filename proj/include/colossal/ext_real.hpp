#pragma once

// Extended-precision real with a rigorous absolute error radius.
//
// The value is an MPFR float at a chosen precision. The radius is a double
// that upper-bounds |true - value|; every operation below widens it by the
// propagated input radii plus the rounding error of the operation itself.

#include <cstdint>

#define MPFR_USE_INTMAX_T 1
#include <mpfr.h>
#include <string>

namespace colossal {

/// Working precision in significant decimal digits.
struct Precision {
  int digits = 30;

  /// Mantissa bits: enough for `digits` plus 24 guard bits, rounded up to a limb.
  mpfr_prec_t bits() const;

  friend bool operator==(Precision, Precision) = default;
};

inline constexpr int kDefaultDigits = 30;
inline constexpr int kMaxDigits = 120;

class ExtReal {
 public:
  /// Zero with zero radius.
  explicit ExtReal(mpfr_prec_t bits = Precision{}.bits());
  ExtReal(const ExtReal& other);
  ExtReal(ExtReal&& other) noexcept;
  ExtReal& operator=(const ExtReal& other);
  ExtReal& operator=(ExtReal&& other) noexcept;
  ~ExtReal();

  static ExtReal from_uint(std::uint64_t v, mpfr_prec_t bits);
  static ExtReal from_double(double v, mpfr_prec_t bits);
  /// Rounds `v` to `bits`; the rounding error joins `radius`.
  static ExtReal from_mpfr(mpfr_srcptr v, double radius, mpfr_prec_t bits);
  /// Parses a decimal value string and a radius string.
  static ExtReal parse(const std::string& value, const std::string& radius, mpfr_prec_t bits);

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double radius() const { return radius_; }
  void set_radius(double r) { radius_ = r; }
  void widen(double extra);

  /// Nearest double to the value.
  double approx() const;
  /// Double lower / upper bounds of the enclosed interval.
  double lower() const;
  double upper() const;
  double relative_radius() const;

  /// Decimal string that reads back to the identical MPFR value.
  std::string value_string() const;
  std::string radius_string() const;
  std::string to_string(int digits) const;

  /// Rounds to `bits` (radius grows by the rounding error when inexact).
  ExtReal rounded_to(mpfr_prec_t bits) const;

  bool same_bits(const ExtReal& other) const;

 private:
  mpfr_t value_;
  double radius_ = 0.0;
};

enum class IntervalOrder { Less, Greater, Overlap };

IntervalOrder compare(const ExtReal& a, const ExtReal& b);
IntervalOrder compare(const ExtReal& a, std::uint64_t n);

ExtReal operator+(const ExtReal& a, const ExtReal& b);
ExtReal operator-(const ExtReal& a, const ExtReal& b);
ExtReal operator*(const ExtReal& a, const ExtReal& b);
ExtReal operator/(const ExtReal& a, const ExtReal& b);
ExtReal operator-(const ExtReal& a);

ExtReal add_uint(const ExtReal& a, std::uint64_t n);
ExtReal mul_uint(const ExtReal& a, std::uint64_t n);
ExtReal div_uint(const ExtReal& a, std::uint64_t n);

ExtReal log(const ExtReal& a);
ExtReal log1p(const ExtReal& a);
ExtReal exp(const ExtReal& a);
ExtReal sqrt(const ExtReal& a);
ExtReal square(const ExtReal& a);
/// a^(1/k) for a > 0.
ExtReal root(const ExtReal& a, unsigned k);

/// Upper bound of one unit in the last place of `v` at its precision.
double ulp_bound(mpfr_srcptr v);

/// Round-up helpers for radius bookkeeping.
double add_up(double a, double b);
double mul_up(double a, double b);
double div_up(double a, double b);

/// Constant e^gamma at the given precision (gamma = Euler-Mascheroni).
ExtReal exp_euler_gamma(mpfr_prec_t bits);

}  // namespace colossal
