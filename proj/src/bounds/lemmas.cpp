#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "colossal/bounds.hpp"
#include "colossal/critical.hpp"
#include "colossal/errors.hpp"

namespace colossal {

namespace {

// Decimal constant, widened by its conversion error.
ExtReal constant(const char* text, mpfr_prec_t bits) {
  ExtReal c = ExtReal::parse(text, "0", bits);
  c.widen(ulp_bound(c.get()));
  return c;
}

ExtReal num(std::uint64_t v, mpfr_prec_t bits) { return ExtReal::from_uint(v, bits); }

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// x + x^2 + ... + x^k
ExtReal geometric(const ExtReal& x, int k) {
  const ExtReal one = num(1, x.precision());
  ExtReal t = one;
  for (int i = 1; i < k; ++i) t = one + x * t;
  return x * t;
}

ExtReal abs_value(const ExtReal& a) { return a.approx() < 0.0 ? -a : a; }

// log N for the integer N nearest e^u (u > 40): |log N - u| <= 1/(2 e^u - 1) < e^-u.
ExtReal log_of_integer_near(const ExtReal& u) {
  ExtReal r = u;
  const double tail = std::exp(-(u.lower()));
  r.widen(std::max(tail * 1.0000001, std::numeric_limits<double>::denorm_min()));
  return r;
}

// f with an explicit upper index K.
ExtReal f_with_K(const ExtReal& x, int K) {
  const mpfr_prec_t bits = x.precision();
  ExtReal sum(bits);
  for (int k = 3; k <= K; ++k) sum = sum + root(mul_uint(x, static_cast<std::uint64_t>(k)), static_cast<unsigned>(k));
  return sum / sqrt(mul_uint(x, 2));
}

ExtReal discontinuity(int K, mpfr_prec_t bits) {
  ExtReal two_k = num(1, bits);
  mpfr_mul_2ui(two_k.get(), two_k.get(), static_cast<unsigned long>(K), MPFR_RNDN);  // exact
  return div_uint(two_k, static_cast<std::uint64_t>(K));
}

constexpr Lemma5Table kLemma5Table[] = {
    {3, 0.87},  {4, 1.52},  {5, 1.94},  {6, 2.15},  {7, 2.21},  {8, 2.16},  {9, 2.03},
    {10, 1.86}, {11, 1.67}, {12, 1.48}, {13, 1.30}, {14, 1.12}, {15, 0.97}, {16, 0.83},
};

}  // namespace

// ---------------------------------------------------------------- Lemma 1

std::vector<CheckReport> check_lemma1(std::uint64_t p, int kmax, Precision precision) {
  const mpfr_prec_t bits = precision.bits();
  const ExtReal eps = eval_F(p, 1, precision);
  if (kmax <= 0) kmax = max_level(eps);
  const ExtReal x1 = num(p, bits);
  const ExtReal lx1 = log(x1);
  const ExtReal base = x1 * lx1;
  const ExtReal half = constant("0.5", bits);
  const ExtReal one = num(1, bits);

  std::vector<CheckReport> out;
  for (int k = 1; k <= kmax; ++k) {
    const ExtReal xk = k == 1 ? x1 : solve_xk(eps, k);
    const ExtReal lxk = log(xk);
    const ExtReal lhs = geometric(xk, k) * lxk;
    const ExtReal d = (lx1 - lxk) * half;
    const std::string in = "p=" + std::to_string(p) + " k=" + std::to_string(k);
    out.push_back(assert_relation("L1.1", in, lhs, Relation::GreaterEq, base + (one - one / mul_uint(x1, 2)) * d));
    out.push_back(assert_relation("L1.2", in, lhs, Relation::Less, base + d + lx1 / mul_uint(x1, 4)));
    out.push_back(assert_relation("L1.1'", in, lhs, Relation::GreaterEq, base));
    out.push_back(assert_relation("L1.2'", in, lhs, Relation::Less, base + lx1 * half));
  }
  return out;
}

// ---------------------------------------------------------------- Lemma 2

std::vector<CheckReport> check_lemma2(std::uint64_t p, Precision precision) {
  const mpfr_prec_t bits = precision.bits();
  const ExtReal eps = eval_F(p, 1, precision);
  const ExtReal u = solve_t0(eps);
  const ExtReal x1 = num(p, bits);
  const ExtReal half = constant("0.5", bits);
  const ExtReal one = num(1, bits);
  const ExtReal lo = x1 + half - one / mul_uint(log(x1), 2);
  const ExtReal hi = x1 + half - one / mul_uint(x1, 12) + one / mul_uint(square(x1), 24);
  const std::string in = "p=" + std::to_string(p) + " log t0=" + u.to_string(20);
  return {assert_relation("L2.2-lower", in, lo, Relation::Less, u),
          assert_relation("L2.2-upper", in, u, Relation::Less, hi)};
}

// ---------------------------------------------------------------- Lemmas 3, 4

std::vector<CheckReport> check_lemma34(std::uint64_t p, const Lemma34Grid& grid, Precision precision) {
  const mpfr_prec_t bits = precision.bits();
  const ExtReal eps = eval_F(p, 1, precision);
  const ExtReal u0 = solve_t0(eps);  // eps = 1 / (u0 log u0)
  const std::string tag = "p=" + std::to_string(p) + " u0=" + fmt(u0.approx());
  std::vector<CheckReport> out;
  if (compare(u0, 40) != IntervalOrder::Greater) {
    for (const char* id : {"L3.2", "L3.3", "L3.4", "L4.1", "L4.1-proof", "L4.2"}) {
      out.push_back(vacuous(id, tag, "u0 <= 40"));
    }
    return out;
  }

  const ExtReal one = num(1, bits);
  const ExtReal lu0 = log(u0);
  const ExtReal u0sq = square(u0);
  const ExtReal h0 = exp(eps * u0) / lu0;
  auto h = [&](const ExtReal& u) { return exp(eps * u) / log(u); };
  auto at = [&](double offset) { return u0 + ExtReal::from_double(offset, bits); };

  // Case 1, read as a bound on h(u1)/h0; the literal h(u2) reading is kept
  // as information with u2 mirrored above u0.
  const ExtReal c1a = constant("0.2532", bits), c1b = constant("0.5162", bits);
  std::vector<double> d1;
  for (int j = 1; j <= grid.case1_points; ++j) d1.push_back(0.5 * j / (grid.case1_points + 1));
  d1.push_back(0.25);
  for (const double d : d1) {
    const ExtReal dd = ExtReal::from_double(d, bits);
    const ExtReal rhs = one + c1a * dd / (u0sq * lu0) + c1b * square(dd) / (u0sq * square(lu0));
    const std::string in = tag + " u1=u0-" + fmt(d);
    out.push_back(assert_relation("L3.2", in, h(at(-d)) / h0, Relation::Less, rhs));
    out.push_back(assert_relation("L3.2-literal", in + " u2=u0+" + fmt(d), h(at(d)) / h0, Relation::Less, rhs, true));
  }

  // Case 2: u0 < u2 < u0 log u0.
  const double span2 = u0.approx() * lu0.approx() - u0.approx();
  std::vector<double> d2{2.5};
  for (int j = 0; j < grid.case2_points; ++j) {
    d2.push_back(0.01 * std::pow(span2 * 0.999 / 0.01, static_cast<double>(j) / std::max(1, grid.case2_points - 1)));
  }
  for (const double d : d2) {
    const ExtReal dd2 = square(ExtReal::from_double(d, bits));
    const ExtReal rhs = one + dd2 / (mul_uint(u0sq, 2) * lu0) - dd2 / (mul_uint(u0sq, 2) * square(lu0));
    out.push_back(assert_relation("L3.3", tag + " u2=u0+" + fmt(d), h(at(d)) / h0, Relation::Greater, rhs));
  }

  // Case 3: u0 < u1 < u2, u2 - u1 < log u0.
  const ExtReal c3 = constant("0.3337", bits);
  const double offsets[] = {0.1, 1.0, 5.0, 0.5 * u0.approx()};
  for (int j = 0; j < std::min(grid.case3_points, 4); ++j) {
    for (const double frac : {0.1, 0.5, 0.99}) {
      const double a = frac * lu0.approx();
      const ExtReal u1 = at(offsets[j]);
      const ExtReal u2 = u1 + ExtReal::from_double(a, bits);
      const ExtReal ratio = h(u2) / h(u1);
      const ExtReal a2 = square(ExtReal::from_double(a, bits));
      const std::string in = tag + " u1=u0+" + fmt(offsets[j]) + " a=" + fmt(a);
      out.push_back(assert_relation("L3.4", in, ratio, Relation::Greater, one + c3 * a2 / (u0sq * square(lu0))));
      out.push_back(assert_relation("L3.4-strong", in, ratio, Relation::Greater, one + c3 * a2 / (u0sq * lu0), true));
    }
  }

  // Lemma 4 with g(N) = h(log N) at integers N.
  const ExtReal c41 = constant("2.754", bits), c41p = constant("3.2961", bits);
  for (const double below : {0.05, 0.25, 0.45}) {
    const ExtReal lN = log_of_integer_near(at(-below));
    const ExtReal gN = h(lN);
    for (const double above : {2.01, 2.5, 4.0, 0.5 * u0.approx()}) {
      const ExtReal lN1 = log_of_integer_near(at(above));
      const ExtReal gN1 = h(lN1);
      const std::string in = tag + " logN=u0-" + fmt(below) + " logN1=u0+" + fmt(above);
      out.push_back(assert_relation("L4.1", in, gN1, Relation::Greater, gN * (one + c41 / (u0sq * lu0))));
      out.push_back(assert_relation("L4.1-proof", in, gN1, Relation::Greater, gN * (one + c41p / (u0sq * lu0))));
    }
  }
  for (const double above : {0.1, 1.0, 5.0}) {
    const ExtReal lN = log_of_integer_near(at(above));
    const ExtReal gN = h(lN);
    for (const double frac : {0.2, 0.6, 0.95}) {
      const ExtReal lN1 = log_of_integer_near(lN + ExtReal::from_double(frac * lu0.approx(), bits));
      const ExtReal gap = lN1 - lN;
      const std::string in = tag + " logN=u0+" + fmt(above) + " gap=" + fmt(gap.approx());
      out.push_back(assert_relation("L4.2", in, h(lN1), Relation::Greater,
                                    gN * (one + c3 * square(gap) / (u0sq * lu0))));
    }
  }
  return out;
}

// ---------------------------------------------------------------- Lemma 5

ExtReal f_lemma5(const ExtReal& x) {
  const mpfr_prec_t bits = x.precision();
  if (compare(discontinuity(3, bits), x) == IntervalOrder::Greater) {
    throw Error(ErrorKind::InvalidArgument, "f needs x >= 8/3");
  }
  int K = 3;
  while (K < 1000 && compare(discontinuity(K + 1, bits), x) != IntervalOrder::Greater) ++K;
  return f_with_K(x, K);
}

ExtReal f_lemma5_at(int K, Precision precision) {
  if (K < 3) throw Error(ErrorKind::InvalidArgument, "f_lemma5_at needs K >= 3");
  return f_with_K(discontinuity(K, precision.bits()), K);
}

std::span<const Lemma5Table> lemma5_table() { return kLemma5Table; }

std::vector<CheckReport> check_lemma5(Precision precision) {
  const mpfr_prec_t bits = precision.bits();
  std::vector<CheckReport> out;
  std::vector<ExtReal> maxima(66, ExtReal(bits));
  for (int K = 3; K <= 65; ++K) maxima[static_cast<std::size_t>(K)] = f_lemma5_at(K, precision);

  const ExtReal hundredth = constant("0.01", bits);
  for (const auto& row : kLemma5Table) {
    const ExtReal& f = maxima[static_cast<std::size_t>(row.K)];
    const ExtReal expected = constant(fmt(row.value).c_str(), bits);
    out.push_back(assert_relation("L5-table", "K=" + std::to_string(row.K) + " f=" + fmt(f.approx()),
                                  abs_value(f - expected), Relation::LessEq, hundredth));
  }

  for (int K = 7; K <= 30; ++K) {
    out.push_back(assert_relation("L5.3-maxima", "K=" + std::to_string(K),
                                  maxima[static_cast<std::size_t>(K)], Relation::Greater,
                                  maxima[static_cast<std::size_t>(K + 1)]));
  }

  // 100 points per interval [2^K/K, 2^(K+1)/(K+1)), consecutive values decreasing.
  const ExtReal threshold = constant("0.10924", bits);
  for (int K = 3; K <= 31; ++K) {
    const ExtReal a = discontinuity(K, bits);
    const ExtReal width = discontinuity(K + 1, bits) - a;
    ExtReal prev = maxima[static_cast<std::size_t>(K)];
    for (int j = 1; j < 100; ++j) {
      const ExtReal x = a + div_uint(mul_uint(width, static_cast<std::uint64_t>(j)), 100);
      ExtReal f = f_with_K(x, K);
      const std::string in = "K=" + std::to_string(K) + " j=" + std::to_string(j);
      out.push_back(assert_relation("L5.2-decreasing", in, prev, Relation::Greater, f));
      if (K == 31) out.push_back(assert_relation("L5.4-bound", in + " x=" + fmt(x.approx()), f, Relation::Less, threshold));
      prev = std::move(f);
    }
  }
  for (int K = 31; K <= 65; ++K) {
    out.push_back(assert_relation("L5.4-bound", "x=2^" + std::to_string(K) + "/" + std::to_string(K),
                                  maxima[static_cast<std::size_t>(K)], Relation::Less, threshold));
  }

  const ExtReal& f31 = maxima[31];
  out.push_back(assert_relation("L5.4-value", "f(2^31/31)=" + f31.to_string(12), abs_value(f31 - constant("0.10923475", bits)),
                                Relation::LessEq, constant("0.000001", bits)));
  return out;
}

// ---------------------------------------------------------------- Lemma 6

std::vector<CheckReport> check_lemma6(const ThetaTable& table, std::span<const double> samples) {
  std::vector<CheckReport> out;
  const mpfr_prec_t bits = Precision{}.bits();
  const ExtReal c = constant("0.06323", bits);
  for (const double x : samples) {
    const std::string in = "x=" + fmt(x);
    if (!(x > 1e8)) {
      out.push_back(vacuous("L6.2", in, "x <= 1e8"));
      continue;
    }
    const ExtReal X = ExtReal::from_double(x, bits);
    const ExtReal rhs = X * (num(1, bits) + c / square(log(X)));
    out.push_back(assert_relation("L6.2", in, table.psi0(x), Relation::Less, rhs));
  }
  return out;
}

std::vector<double> lemma6_default_samples() {
  std::vector<double> xs;
  for (int j = 1; j <= 64; ++j) xs.push_back(1e8 + std::round(j * 1e5 / 64.0));
  xs.push_back(1e8 + 7);
  return xs;
}

}  // namespace colossal
