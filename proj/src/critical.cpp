#include "colossal/critical.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "colossal/errors.hpp"

namespace colossal {

namespace {

constexpr std::size_t kMaxStoredEvents = 1000;
constexpr int kIterationCap = 200;

// Relative rounding unit of a round-to-nearest MPFR result.
double unit(mpfr_prec_t bits) { return std::ldexp(1.0, -static_cast<int>(bits)); }

double abs_upper(mpfr_srcptr v) { return std::fabs(mpfr_get_d(v, MPFR_RNDA)); }

// Largest digit count whose Precision::bits() does not exceed `bits`.
Precision precision_for_bits(mpfr_prec_t bits) {
  Precision p{std::max(1, static_cast<int>((static_cast<double>(bits) - 24.0) / 3.3219280948873623))};
  while (p.digits > 1 && p.bits() > bits) --p.digits;
  return p;
}

std::string describe(PrimeLevel a) { return std::to_string(a.p) + "^" + std::to_string(a.k); }

// log(1 + 1/S) / log x in double, for bracketing only.
double F_double(double x, int k) {
  const double lx = std::log(x);
  const double klx = k * lx;
  if (klx > 700.0) return std::exp(-(klx + std::log(x / (x - 1.0)))) / lx;
  const double s = x * std::expm1(klx) / std::expm1(lx);
  return std::log1p(1.0 / s) / lx;
}

struct MpfrScratch {
  explicit MpfrScratch(mpfr_prec_t bits) {
    for (auto* v : {&a, &b, &c, &d, &e}) mpfr_init2(*v, bits);
  }
  ~MpfrScratch() {
    for (auto* v : {&a, &b, &c, &d, &e}) mpfr_clear(*v);
  }
  MpfrScratch(const MpfrScratch&) = delete;
  MpfrScratch& operator=(const MpfrScratch&) = delete;
  mpfr_t a, b, c, d, e;
};

}  // namespace

const char* to_string(EpsOrder order) {
  switch (order) {
    case EpsOrder::Less: return "less";
    case EpsOrder::Greater: return "greater";
    case EpsOrder::Tie: return "tie";
  }
  return "?";
}

CriticalValue critical_value(std::uint64_t p, int k, Precision precision) {
  if (p < 2) throw Error(ErrorKind::InvalidArgument, "F(x,k) needs x > 1");
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "F(x,k) needs k >= 1");
  const mpfr_prec_t bits = precision.bits();
  const double u = unit(bits);
  CriticalValue cv{{p, k}, ExtReal(bits), ExtReal(bits), ExtReal(bits), 0.0};

  mpfr_t t;
  mpfr_init2(t, bits);
  if (k == 1) {
    mpfr_set_ui(t, 1, MPFR_RNDN);
    mpfr_div_ui(t, t, static_cast<unsigned long>(p), MPFR_RNDN);
  } else {
    // S = p (p^k - 1) / (p - 1), exact.
    mpz_t s;
    mpz_init(s);
    mpz_ui_pow_ui(s, static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    mpz_sub_ui(s, s, 1);
    mpz_divexact_ui(s, s, static_cast<unsigned long>(p - 1));
    mpz_mul_ui(s, s, static_cast<unsigned long>(p));
    mpfr_set_z(t, s, MPFR_RNDN);
    mpz_clear(s);
    mpfr_ui_div(t, 1, t, MPFR_RNDN);
  }
  // 1/S carries at most two roundings; log1p does not amplify relative error
  // for arguments in (0, 1/2], and adds one more rounding.
  mpfr_log1p(cv.log_gain.get(), t, MPFR_RNDN);
  mpfr_clear(t);
  cv.log_gain.set_radius(mul_up(abs_upper(cv.log_gain.get()), 4.0 * u));

  mpfr_log_ui(cv.log_p.get(), static_cast<unsigned long>(p), MPFR_RNDN);
  cv.log_p.set_radius(mul_up(abs_upper(cv.log_p.get()), u));

  mpfr_div(cv.eps.get(), cv.log_gain.get(), cv.log_p.get(), MPFR_RNDN);
  cv.eps.set_radius(mul_up(abs_upper(cv.eps.get()), 8.0 * u));
  cv.approx = mpfr_get_d(cv.eps.get(), MPFR_RNDN);
  return cv;
}

ExtReal eval_F(std::uint64_t x, int k, Precision precision) { return critical_value(x, k, precision).eps; }

ExtReal eval_F(const ExtReal& x, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "F(x,k) needs k >= 1");
  if (!(x.lower() > 1.0)) throw Error(ErrorKind::InvalidArgument, "F(x,k) needs x > 1");
  const mpfr_prec_t bits = x.precision();
  const ExtReal one = ExtReal::from_uint(1, bits);
  ExtReal t = one;
  for (int i = 1; i < k; ++i) t = one + x * t;
  const ExtReal s = x * t;
  return log1p(one / s) / log(x);
}

ExtReal eval_F(double x, int k, Precision precision) {
  if (x >= 2.0 && x < 0x1p53 && std::floor(x) == x) return eval_F(static_cast<std::uint64_t>(x), k, precision);
  return eval_F(ExtReal::from_double(x, precision.bits()), k);
}

EpsOrder compare_eps(const ExtReal& a, const ExtReal& b) {
  switch (compare(a, b)) {
    case IntervalOrder::Less: return EpsOrder::Less;
    case IntervalOrder::Greater: return EpsOrder::Greater;
    case IntervalOrder::Overlap: return EpsOrder::Tie;
  }
  return EpsOrder::Tie;
}

EpsOrder compare_eps(PrimeLevel a, PrimeLevel b, Precision base, int* escalations) {
  if (a == b) return EpsOrder::Tie;
  int digits = std::min(base.digits, kMaxDigits);
  for (;;) {
    const Precision prec{digits};
    const EpsOrder o = compare_eps(critical_value(a.p, a.k, prec).eps, critical_value(b.p, b.k, prec).eps);
    if (o != EpsOrder::Tie || digits >= kMaxDigits) return o;
    digits = std::min(2 * digits, kMaxDigits);
    if (escalations != nullptr) ++*escalations;
  }
}

// ---------------------------------------------------------------- stream

ParamStream::ParamStream(const PrimeSieve& sieve, std::uint64_t pmax, Precision precision)
    : sieve_(&sieve), pmax_(pmax), precision_(precision) {
  if (pmax < 2) throw Error(ErrorKind::InvalidArgument, "pmax must be >= 2");
  frontier_.push_back(critical_value(2, 1, precision_));
}

ParamStream::ParamStream(const PrimeSieve& sieve, std::uint64_t pmax, Precision precision,
                         std::span<const std::uint64_t> boundaries, std::uint64_t emitted)
    : ParamStream(sieve, pmax, precision) {
  if (boundaries.empty()) return;
  emitted_ = emitted;
  frontier_.clear();
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    frontier_.push_back(critical_value(sieve.next_prime(boundaries[i]), k, precision_));
    CriticalValue done = critical_value(boundaries[i], k, precision_);
    if (!last_ || order(done, *last_) == EpsOrder::Less) last_ = std::move(done);
  }
  frontier_.push_back(critical_value(2, static_cast<int>(boundaries.size()) + 1, precision_));
}

EpsOrder ParamStream::order(const CriticalValue& a, const CriticalValue& b) {
  // The doubles are within ~1.2e-16 relative of the true values.
  if (a.approx > b.approx * (1.0 + 1e-14)) return EpsOrder::Greater;
  if (a.approx < b.approx * (1.0 - 1e-14)) return EpsOrder::Less;
  const EpsOrder direct = compare_eps(a.eps, b.eps);
  if (direct != EpsOrder::Tie || a.at == b.at) return direct;
  int n = 0;
  const EpsOrder o = compare_eps(a.at, b.at, precision_, &n);
  escalations_ += static_cast<std::uint64_t>(n);
  if (events_.size() < kMaxStoredEvents) {
    events_.push_back({StreamEvent::Kind::Escalation, a.at, b.at,
                       "F(" + describe(a.at) + ") vs F(" + describe(b.at) + "): " + to_string(o) + " after " +
                           std::to_string(n) + " escalation(s); " + a.eps.to_string(40) + " vs " +
                           b.eps.to_string(40)});
  }
  return o;
}

void ParamStream::replace(std::size_t level_index, std::uint64_t p) {
  frontier_[level_index] = critical_value(p, static_cast<int>(level_index) + 1, precision_);
}

std::optional<CriticalStep> ParamStream::next() {
  if (exhausted_) return std::nullopt;

  std::size_t best = 0;
  for (std::size_t i = 1; i < frontier_.size(); ++i) {
    if (order(frontier_[i], frontier_[best]) == EpsOrder::Greater) best = i;
  }
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < frontier_.size(); ++i) {
    if (i == best || order(frontier_[i], frontier_[best]) == EpsOrder::Tie) members.push_back(i);
  }

  for (const std::size_t i : members) {
    if (frontier_[i].at.k == 1 && frontier_[i].at.p > pmax_) {
      exhausted_ = true;
      return std::nullopt;
    }
  }
  if (last_ && order(*last_, frontier_[best]) != EpsOrder::Greater) {
    throw Error(ErrorKind::StreamOrderViolation,
                "F(" + describe(frontier_[best].at) + ") not below previous F(" + describe(last_->at) + ")");
  }

  CriticalStep step{frontier_[best].eps, {}};
  for (const std::size_t i : members) step.members.push_back({frontier_[i].at, frontier_[i].log_p, frontier_[i].log_gain});
  if (members.size() > 1) {
    ++ties_;
    if (events_.size() < kMaxStoredEvents) {
      std::string who;
      for (const auto& m : step.members) who += (who.empty() ? "" : ";") + describe(m.at);
      events_.push_back({StreamEvent::Kind::Tie, step.members[0].at, step.members[1].at,
                         "tie at " + std::to_string(kMaxDigits) + " digits: " + who + " eps=" + step.eps.to_string(40)});
    }
  }
  last_ = frontier_[best];

  for (const std::size_t i : members) {
    const std::uint64_t p = frontier_[i].at.p;
    if (p == 2 && i + 1 == frontier_.size()) {
      frontier_.push_back(critical_value(2, static_cast<int>(i) + 2, precision_));
    }
    replace(i, sieve_->next_prime(p));
  }
  ++emitted_;
  return step;
}

// ---------------------------------------------------------------- solvers

ExtReal solve_xk(const ExtReal& eps, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "solve_xk needs k >= 1");
  const double e = eps.approx();
  if (!(e > 0.0) || !(eps.lower() > 0.0)) throw Error(ErrorKind::NoSolution, "solve_xk needs eps > 0");

  // Bracket in log x, then bisect in double.
  double y_lo = std::log1p(1e-6);
  if (F_double(std::exp(y_lo), k) < e) throw Error(ErrorKind::NoSolution, "eps too large: root below 1 + 1e-6");
  double y_hi = std::log(2.0);
  while (F_double(std::exp(y_hi), k) > e) {
    y_hi *= 2.0;
    if (y_hi > 690.0) throw Error(ErrorKind::NoSolution, "eps too small for a double bracket");
  }
  for (int it = 0; it < kIterationCap; ++it) {
    const double mid = 0.5 * (y_lo + y_hi);
    if (mid <= y_lo || mid >= y_hi) break;
    (F_double(std::exp(mid), k) > e ? y_lo : y_hi) = mid;
    if (std::exp(y_hi) - std::exp(y_lo) <= 4.0 * std::numeric_limits<double>::epsilon() * std::exp(y_hi)) break;
  }
  const double x_lo = std::exp(y_lo) * (1.0 - 1e-9);
  const double x_hi = std::exp(y_hi) * (1.0 + 1e-9);

  // Newton on log F(x,k) - log eps with the analytic derivative.
  const mpfr_prec_t out_bits = eps.precision();
  const mpfr_prec_t bits = out_bits + 32;
  MpfrScratch m(bits);
  mpfr_t x, log_eps, s, ds, g, dg;
  mpfr_inits2(bits, x, log_eps, s, ds, g, dg, static_cast<mpfr_ptr>(nullptr));
  mpfr_log(log_eps, eps.get(), MPFR_RNDN);
  mpfr_set_d(x, 0.5 * (std::exp(y_lo) + std::exp(y_hi)), MPFR_RNDN);
  bool converged = false;
  for (int it = 0; it < kIterationCap && !converged; ++it) {
    // s = x + ... + x^k and ds = 1 + 2x + ... + k x^(k-1), by Horner.
    mpfr_set_ui(s, 1, MPFR_RNDN);
    mpfr_set_ui(ds, static_cast<unsigned long>(k), MPFR_RNDN);
    for (int i = k - 1; i >= 1; --i) {
      mpfr_mul(s, s, x, MPFR_RNDN);
      mpfr_add_ui(s, s, 1, MPFR_RNDN);
      mpfr_mul(ds, ds, x, MPFR_RNDN);
      mpfr_add_ui(ds, ds, static_cast<unsigned long>(i), MPFR_RNDN);
    }
    mpfr_mul(s, s, x, MPFR_RNDN);
    mpfr_ui_div(m.a, 1, s, MPFR_RNDN);
    mpfr_log1p(m.a, m.a, MPFR_RNDN);  // L = log(1 + 1/S)
    mpfr_log(m.b, x, MPFR_RNDN);      // log x
    // g = log L - log log x - log eps
    mpfr_log(m.c, m.a, MPFR_RNDN);
    mpfr_log(m.d, m.b, MPFR_RNDN);
    mpfr_sub(g, m.c, m.d, MPFR_RNDN);
    mpfr_sub(g, g, log_eps, MPFR_RNDN);
    // dg = -S' / (S (S + 1) L) - 1 / (x log x)
    mpfr_add_ui(m.c, s, 1, MPFR_RNDN);
    mpfr_mul(m.c, m.c, s, MPFR_RNDN);
    mpfr_mul(m.c, m.c, m.a, MPFR_RNDN);
    mpfr_div(dg, ds, m.c, MPFR_RNDN);
    mpfr_neg(dg, dg, MPFR_RNDN);
    mpfr_mul(m.d, x, m.b, MPFR_RNDN);
    mpfr_ui_div(m.d, 1, m.d, MPFR_RNDN);
    mpfr_sub(dg, dg, m.d, MPFR_RNDN);
    // step
    mpfr_div(m.e, g, dg, MPFR_RNDN);
    mpfr_sub(m.c, x, m.e, MPFR_RNDN);
    if (mpfr_cmp_d(m.c, x_lo) <= 0 || mpfr_cmp_d(m.c, x_hi) >= 0) {
      // left the bracket: bisect toward the side the residual points at
      const double edge = mpfr_sgn(g) > 0 ? x_hi : x_lo;
      mpfr_add_d(m.c, x, edge, MPFR_RNDN);
      mpfr_div_2ui(m.c, m.c, 1, MPFR_RNDN);
    }
    mpfr_sub(m.d, m.c, x, MPFR_RNDN);
    mpfr_set(x, m.c, MPFR_RNDN);
    converged = mpfr_zero_p(m.d) || mpfr_get_exp(m.d) < mpfr_get_exp(x) - (bits - 8);
  }
  ExtReal root = ExtReal::from_mpfr(x, 0.0, out_bits);
  const double log_slope = std::fabs(mpfr_get_d(dg, MPFR_RNDN));
  mpfr_clears(x, log_eps, s, ds, g, dg, static_cast<mpfr_ptr>(nullptr));
  if (!converged) throw Error(ErrorKind::NoSolution, "solve_xk: iteration cap reached");

  // |x - x*| <= |F(x) - eps| / |F'|, F' = F * dg, with a small slack for the
  // variation of F' across that (tiny) interval.
  const ExtReal fx = eval_F(root, k);
  const ExtReal residual = fx - eps;
  const double fd = e * log_slope;
  const double res = std::max(std::fabs(residual.lower()), std::fabs(residual.upper()));
  if (!(res <= 1e-20 * e)) throw Error(ErrorKind::NoSolution, "solve_xk: residual too large");
  root.set_radius(add_up(div_up(res, fd * (1.0 - 1e-3)), ulp_bound(root.get())));
  return root;
}

int max_level(const ExtReal& eps) {
  if (!(eps.approx() > 0.0)) throw Error(ErrorKind::InvalidArgument, "max_level needs eps > 0");
  const Precision prec = precision_for_bits(eps.precision());
  int level = 0;
  while (level < 4096 && compare_eps(eval_F(std::uint64_t{2}, level + 1, prec), eps) != EpsOrder::Less) ++level;
  return level;
}

ExtReal solve_t0(const ExtReal& eps) {
  const double e = eps.approx();
  if (!(e > 0.0) || !(eps.lower() > 0.0)) throw Error(ErrorKind::NoSolution, "solve_t0 needs eps > 0");
  auto h = [e](double u) { return u * std::log(u) - 1.0 / e; };
  double lo = 1.0, hi = 2.0;
  while (h(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 100 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
  }

  const mpfr_prec_t out_bits = eps.precision();
  const mpfr_prec_t bits = out_bits + 32;
  MpfrScratch m(bits);
  mpfr_t u, inv;
  mpfr_inits2(bits, u, inv, static_cast<mpfr_ptr>(nullptr));
  mpfr_ui_div(inv, 1, eps.get(), MPFR_RNDN);
  mpfr_set_d(u, 0.5 * (lo + hi), MPFR_RNDN);
  bool converged = false;
  for (int it = 0; it < kIterationCap && !converged; ++it) {
    mpfr_log(m.a, u, MPFR_RNDN);
    mpfr_mul(m.b, u, m.a, MPFR_RNDN);
    mpfr_sub(m.b, m.b, inv, MPFR_RNDN);  // h(u)
    mpfr_add_ui(m.a, m.a, 1, MPFR_RNDN);  // h'(u)
    mpfr_div(m.c, m.b, m.a, MPFR_RNDN);
    mpfr_sub(u, u, m.c, MPFR_RNDN);
    converged = mpfr_zero_p(m.c) || mpfr_get_exp(m.c) < mpfr_get_exp(u) - (bits - 8);
  }
  ExtReal root = ExtReal::from_mpfr(u, 0.0, out_bits);
  mpfr_clears(u, inv, static_cast<mpfr_ptr>(nullptr));
  if (!converged) throw Error(ErrorKind::NoSolution, "solve_t0: iteration cap reached");

  // |u - u*| <= |h(u)| / h' with h' = log u + 1 >= 1 near the root.
  const ExtReal one = ExtReal::from_uint(1, out_bits);
  const ExtReal residual = root * log(root) - one / eps;
  const double res = std::max(std::fabs(residual.lower()), std::fabs(residual.upper()));
  const double slope = std::log(root.approx()) + 1.0;
  root.set_radius(add_up(div_up(res, slope * (1.0 - 1e-3)), ulp_bound(root.get())));
  return root;
}

}  // namespace colossal
