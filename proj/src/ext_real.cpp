#include "colossal/ext_real.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "colossal/errors.hpp"

namespace colossal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double x) { return std::nextafter(x, -kInf); }

double abs_up(mpfr_srcptr v) { return std::fabs(mpfr_get_d(v, MPFR_RNDA)); }
double abs_down(mpfr_srcptr v) { return std::fabs(mpfr_get_d(v, MPFR_RNDZ)); }

// Lower bound of |v| - r, clamped at zero.
double magnitude_floor(const ExtReal& a) {
  double m = down(abs_down(a.get()) - a.radius());
  return m > 0.0 ? m : 0.0;
}

mpfr_prec_t max_prec(const ExtReal& a, const ExtReal& b) {
  return std::max(a.precision(), b.precision());
}

void add_rounding(ExtReal& r, int ternary) {
  if (ternary != 0) r.widen(ulp_bound(r.get()));
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::SieveExhausted: return "sieve-exhausted";
    case ErrorKind::NoSolution: return "no-solution";
    case ErrorKind::StreamOrderViolation: return "stream-order-violation";
    case ErrorKind::UnresolvedClass: return "unresolved-class";
    case ErrorKind::Internal: return "internal";
    case ErrorKind::Io: return "io";
    case ErrorKind::CorruptCheckpoint: return "corrupt-checkpoint";
  }
  return "unknown";
}

mpfr_prec_t Precision::bits() const {
  // log2(10) = 3.3219...; 24 guard bits; whole 64-bit limbs.
  const auto raw = static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 24;
  return (raw + 63) / 64 * 64;
}

double add_up(double a, double b) { return std::nextafter(a + b, kInf); }
double mul_up(double a, double b) { return std::nextafter(a * b, kInf); }
double div_up(double a, double b) { return std::nextafter(a / b, kInf); }

double ulp_bound(mpfr_srcptr v) {
  if (mpfr_zero_p(v)) return 0.0;
  const double u = std::ldexp(1.0, static_cast<int>(mpfr_get_exp(v) - mpfr_get_prec(v)));
  return u > 0.0 ? u : std::numeric_limits<double>::denorm_min();
}

ExtReal::ExtReal(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_ui(value_, 0, MPFR_RNDN);
}

ExtReal::ExtReal(const ExtReal& other) : radius_(other.radius_) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

ExtReal::ExtReal(ExtReal&& other) noexcept : radius_(other.radius_) {
  value_[0] = other.value_[0];
  other.value_[0]._mpfr_d = nullptr;
}

ExtReal& ExtReal::operator=(const ExtReal& other) {
  if (this == &other) return *this;
  if (value_[0]._mpfr_d == nullptr) {
    mpfr_init2(value_, other.precision());
  } else if (precision() != other.precision()) {
    mpfr_set_prec(value_, other.precision());
  }
  mpfr_set(value_, other.value_, MPFR_RNDN);
  radius_ = other.radius_;
  return *this;
}

ExtReal& ExtReal::operator=(ExtReal&& other) noexcept {
  if (this == &other) return *this;
  if (value_[0]._mpfr_d != nullptr) mpfr_clear(value_);
  value_[0] = other.value_[0];
  other.value_[0]._mpfr_d = nullptr;
  radius_ = other.radius_;
  return *this;
}

ExtReal::~ExtReal() {
  if (value_[0]._mpfr_d != nullptr) mpfr_clear(value_);
}

ExtReal ExtReal::from_uint(std::uint64_t v, mpfr_prec_t bits) {
  ExtReal r(bits);
  add_rounding(r, mpfr_set_uj(r.value_, v, MPFR_RNDN));
  return r;
}

ExtReal ExtReal::from_double(double v, mpfr_prec_t bits) {
  ExtReal r(bits);
  add_rounding(r, mpfr_set_d(r.value_, v, MPFR_RNDN));
  return r;
}

ExtReal ExtReal::from_mpfr(mpfr_srcptr v, double radius, mpfr_prec_t bits) {
  ExtReal r(bits);
  r.radius_ = radius;
  add_rounding(r, mpfr_set(r.value_, v, MPFR_RNDN));
  return r;
}

ExtReal ExtReal::parse(const std::string& value, const std::string& radius, mpfr_prec_t bits) {
  ExtReal r(bits);
  if (mpfr_set_str(r.value_, value.c_str(), 10, MPFR_RNDN) != 0 || !mpfr_number_p(r.value_)) {
    throw Error(ErrorKind::InvalidArgument, "bad decimal value '" + value + "'");
  }
  char* end = nullptr;
  r.radius_ = std::strtod(radius.c_str(), &end);
  if (end == radius.c_str() || *end != '\0' || !(r.radius_ >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "bad radius '" + radius + "'");
  }
  return r;
}

void ExtReal::widen(double extra) { radius_ = add_up(radius_, extra); }

double ExtReal::approx() const { return mpfr_get_d(value_, MPFR_RNDN); }

double ExtReal::lower() const { return down(mpfr_get_d(value_, MPFR_RNDD) - radius_); }

double ExtReal::upper() const { return add_up(mpfr_get_d(value_, MPFR_RNDU), radius_); }

double ExtReal::relative_radius() const {
  const double m = abs_down(value_);
  return m > 0.0 ? div_up(radius_, m) : kInf;
}

std::string ExtReal::value_string() const {
  const auto ndigits = static_cast<int>(mpfr_get_str_ndigits(10, precision()));
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", ndigits - 1, value_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string ExtReal::radius_string() const {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", radius_);
  return buf;
}

std::string ExtReal::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, value_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s + " +/- " + radius_string();
}

ExtReal ExtReal::rounded_to(mpfr_prec_t bits) const { return from_mpfr(value_, radius_, bits); }

bool ExtReal::same_bits(const ExtReal& other) const {
  return precision() == other.precision() && mpfr_equal_p(value_, other.value_) &&
         radius_ == other.radius_;
}

IntervalOrder compare(const ExtReal& a, const ExtReal& b) {
  mpfr_t d;
  mpfr_init2(d, max_prec(a, b));
  const int t = mpfr_sub(d, a.get(), b.get(), MPFR_RNDN);
  double slack = add_up(a.radius(), b.radius());
  if (t != 0) slack = add_up(slack, ulp_bound(d));
  const double gap = abs_down(d);
  const int sign = mpfr_sgn(d);
  mpfr_clear(d);
  if (gap > slack && sign != 0) return sign > 0 ? IntervalOrder::Greater : IntervalOrder::Less;
  return IntervalOrder::Overlap;
}

IntervalOrder compare(const ExtReal& a, std::uint64_t n) {
  mpfr_t d;
  mpfr_init2(d, std::max<mpfr_prec_t>(a.precision(), 64));
  mpfr_set_uj(d, n, MPFR_RNDN);
  const int t = mpfr_sub(d, a.get(), d, MPFR_RNDN);
  double slack = a.radius();
  if (t != 0) slack = add_up(slack, ulp_bound(d));
  const double gap = abs_down(d);
  const int sign = mpfr_sgn(d);
  mpfr_clear(d);
  if (gap > slack && sign != 0) return sign > 0 ? IntervalOrder::Greater : IntervalOrder::Less;
  return IntervalOrder::Overlap;
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  ExtReal r(max_prec(a, b));
  r.set_radius(add_up(a.radius(), b.radius()));
  add_rounding(r, mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN));
  return r;
}

ExtReal operator-(const ExtReal& a, const ExtReal& b) {
  ExtReal r(max_prec(a, b));
  r.set_radius(add_up(a.radius(), b.radius()));
  add_rounding(r, mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN));
  return r;
}

ExtReal operator-(const ExtReal& a) {
  ExtReal r(a);
  mpfr_neg(r.get(), r.get(), MPFR_RNDN);
  return r;
}

ExtReal operator*(const ExtReal& a, const ExtReal& b) {
  ExtReal r(max_prec(a, b));
  const double ra = a.radius(), rb = b.radius();
  r.set_radius(add_up(add_up(mul_up(abs_up(a.get()), rb), mul_up(abs_up(b.get()), ra)),
                      mul_up(ra, rb)));
  add_rounding(r, mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN));
  return r;
}

ExtReal operator/(const ExtReal& a, const ExtReal& b) {
  const double b_low = magnitude_floor(b);
  if (!(b_low > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "division by an interval containing zero");
  }
  ExtReal r(max_prec(a, b));
  const double num = add_up(mul_up(abs_up(a.get()), b.radius()), mul_up(abs_up(b.get()), a.radius()));
  const double den = down(abs_down(b.get()) * b_low);
  r.set_radius(div_up(num, den));
  add_rounding(r, mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN));
  return r;
}

ExtReal add_uint(const ExtReal& a, std::uint64_t n) {
  ExtReal r(a.precision());
  r.set_radius(a.radius());
  mpfr_t nn;
  mpfr_init2(nn, 64);
  mpfr_set_uj(nn, n, MPFR_RNDN);
  add_rounding(r, mpfr_add(r.get(), a.get(), nn, MPFR_RNDN));
  mpfr_clear(nn);
  return r;
}

ExtReal mul_uint(const ExtReal& a, std::uint64_t n) {
  ExtReal r(a.precision());
  r.set_radius(mul_up(a.radius(), static_cast<double>(n) * (1.0 + 0x1p-52)));
  mpfr_t nn;
  mpfr_init2(nn, 64);
  mpfr_set_uj(nn, n, MPFR_RNDN);
  add_rounding(r, mpfr_mul(r.get(), a.get(), nn, MPFR_RNDN));
  mpfr_clear(nn);
  return r;
}

ExtReal div_uint(const ExtReal& a, std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
  ExtReal r(a.precision());
  r.set_radius(div_up(a.radius(), down(static_cast<double>(n))));
  mpfr_t nn;
  mpfr_init2(nn, 64);
  mpfr_set_uj(nn, n, MPFR_RNDN);
  add_rounding(r, mpfr_div(r.get(), a.get(), nn, MPFR_RNDN));
  mpfr_clear(nn);
  return r;
}

ExtReal log(const ExtReal& a) {
  if (mpfr_sgn(a.get()) <= 0) throw Error(ErrorKind::InvalidArgument, "log of a non-positive value");
  const double low = magnitude_floor(a);
  if (a.radius() > 0.0 && !(low > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "log of an interval reaching zero");
  }
  ExtReal r(a.precision());
  r.set_radius(a.radius() > 0.0 ? div_up(a.radius(), low) : 0.0);
  add_rounding(r, mpfr_log(r.get(), a.get(), MPFR_RNDN));
  return r;
}

ExtReal log1p(const ExtReal& a) {
  const double low = down(1.0 + down(mpfr_get_d(a.get(), MPFR_RNDD) - a.radius()));
  if (!(low > 0.0)) throw Error(ErrorKind::InvalidArgument, "log1p of a value <= -1");
  ExtReal r(a.precision());
  r.set_radius(a.radius() > 0.0 ? div_up(a.radius(), low) : 0.0);
  add_rounding(r, mpfr_log1p(r.get(), a.get(), MPFR_RNDN));
  return r;
}

ExtReal exp(const ExtReal& a) {
  ExtReal r(a.precision());
  const int t = mpfr_exp(r.get(), a.get(), MPFR_RNDN);
  if (a.radius() > 0.0) {
    // |exp(a+d) - exp(a)| <= exp(a) * expm1(|d|)
    const double growth = mul_up(std::expm1(a.radius()), 1.0 + 0x1p-50);
    r.set_radius(mul_up(add_up(abs_up(r.get()), ulp_bound(r.get())), growth));
  }
  add_rounding(r, t);
  return r;
}

ExtReal sqrt(const ExtReal& a) {
  if (mpfr_sgn(a.get()) < 0) throw Error(ErrorKind::InvalidArgument, "sqrt of a negative value");
  ExtReal r(a.precision());
  const double low = magnitude_floor(a);
  if (a.radius() > 0.0) {
    r.set_radius(low > 0.0 ? div_up(a.radius(), down(std::sqrt(low))) : std::nextafter(std::sqrt(a.radius()), kInf));
  }
  add_rounding(r, mpfr_sqrt(r.get(), a.get(), MPFR_RNDN));
  return r;
}

ExtReal square(const ExtReal& a) {
  ExtReal r(a.precision());
  const double ra = a.radius();
  r.set_radius(add_up(mul_up(2.0 * abs_up(a.get()), ra), mul_up(ra, ra)));
  add_rounding(r, mpfr_sqr(r.get(), a.get(), MPFR_RNDN));
  return r;
}

ExtReal root(const ExtReal& a, unsigned k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "zeroth root");
  if (k == 1) return a;
  if (mpfr_sgn(a.get()) <= 0) throw Error(ErrorKind::InvalidArgument, "root of a non-positive value");
  ExtReal r(a.precision());
  if (a.radius() > 0.0) {
    const double low = magnitude_floor(a);
    if (!(low > 0.0)) throw Error(ErrorKind::InvalidArgument, "root of an interval reaching zero");
    // derivative (1/k) x^(1/k - 1) is largest at the interval's lower end
    const double slope = std::pow(low, 1.0 / k - 1.0) / k;
    r.set_radius(mul_up(mul_up(a.radius(), slope), 1.0 + 0x1p-40));
  }
  add_rounding(r, mpfr_rootn_ui(r.get(), a.get(), k, MPFR_RNDN));
  return r;
}

ExtReal exp_euler_gamma(mpfr_prec_t bits) {
  mpfr_t lo, hi;
  mpfr_init2(lo, bits + 32);
  mpfr_init2(hi, bits + 32);
  mpfr_const_euler(lo, MPFR_RNDD);
  mpfr_const_euler(hi, MPFR_RNDU);
  mpfr_exp(lo, lo, MPFR_RNDD);
  mpfr_exp(hi, hi, MPFR_RNDU);
  ExtReal r(bits);
  mpfr_t mid;
  mpfr_init2(mid, bits + 33);
  mpfr_add(mid, lo, hi, MPFR_RNDN);
  mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
  mpfr_sub(hi, hi, lo, MPFR_RNDU);
  const double half_width = mpfr_get_d(hi, MPFR_RNDU);
  r = ExtReal::from_mpfr(mid, add_up(half_width, ulp_bound(mid)), bits);
  mpfr_clears(lo, hi, mid, static_cast<mpfr_ptr>(nullptr));
  return r;
}

}  // namespace colossal
