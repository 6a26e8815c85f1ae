#include <cmath>

#include "colossal/accumulator.hpp"
#include "colossal/ext_real.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace colossal;
using colossal::testing::encloses;
using colossal::testing::near;

TEST_SUITE("numeric") {
  TEST_CASE("precision maps digits to limb-rounded bits") {
    CHECK(Precision{30}.bits() == 128);
    CHECK(Precision{60}.bits() % 64 == 0);
    CHECK(Precision{60}.bits() >= 200);
    CHECK(Precision{120}.bits() >= 399);
  }

  TEST_CASE("basic functions enclose high-precision references") {
    const mpfr_prec_t bits = Precision{}.bits();
    CHECK(encloses(log(ExtReal::from_uint(5040, bits)), "8.52516136106541430016553103635", 1e-29));
    CHECK(encloses(log(ExtReal::parse("1.5", "0", bits)), "0.405465108108164381978013115464", 1e-29));
    CHECK(encloses(exp_euler_gamma(bits), "1.78107241799019798523650410311", 1e-29));
    CHECK(near(sqrt(ExtReal::from_uint(2, bits)), "1.41421356237309504880168872421", 1e-28));
    CHECK(near(root(ExtReal::from_uint(27, bits), 3), "3", 1e-28));
  }

  TEST_CASE("interval comparison") {
    const mpfr_prec_t bits = 128;
    ExtReal a = ExtReal::from_uint(1, bits);
    ExtReal b = ExtReal::from_uint(2, bits);
    CHECK(compare(a, b) == IntervalOrder::Less);
    CHECK(compare(b, a) == IntervalOrder::Greater);
    a.widen(1.5);
    CHECK(compare(a, b) == IntervalOrder::Overlap);
    CHECK(compare(b, 1) == IntervalOrder::Greater);
    CHECK(compare(b, 2) == IntervalOrder::Overlap);
  }

  TEST_CASE("radius grows through arithmetic") {
    const mpfr_prec_t bits = 128;
    ExtReal x = ExtReal::parse("0.1", "1e-20", bits);
    const ExtReal y = x * x + x;
    CHECK(y.radius() >= 1e-20);
    CHECK(y.radius() < 1e-18);
  }

  TEST_CASE("value strings round-trip exactly") {
    const mpfr_prec_t bits = 128;
    const ExtReal x = log(ExtReal::from_uint(1'000'003, bits));
    const ExtReal back = ExtReal::parse(x.value_string(), x.radius_string(), bits);
    CHECK(back.same_bits(x));
    CHECK(back.radius() == x.radius());
  }

  TEST_CASE("compensated accumulator matches a wide reference") {
    const mpfr_prec_t bits = 128;
    CompensatedAccumulator acc(bits);
    ExtReal wide = ExtReal::from_uint(0, 512);
    for (std::uint64_t n = 2; n < 20000; ++n) {
      const ExtReal t = log(ExtReal::from_uint(n, bits));
      acc.add(t);
      wide = wide + log(ExtReal::from_uint(n, 512));
    }
    const ExtReal v = acc.value();
    const ExtReal d = v.rounded_to(512) - wide;
    CHECK(std::fabs(d.approx()) <= v.radius() + wide.radius());
    CHECK(v.relative_radius() < 1e-30);
  }

  TEST_CASE("accumulator restore is bit-exact") {
    const mpfr_prec_t bits = 128;
    CompensatedAccumulator acc(bits);
    for (std::uint64_t n = 2; n < 500; ++n) acc.add(log(ExtReal::from_uint(n, bits)));
    const auto copy = CompensatedAccumulator::restore(acc.sum().value_string(), std::to_string(acc.radius()),
                                                      acc.compensation().value_string(), bits);
    CHECK(copy.sum().same_bits(acc.sum()));
    CHECK(copy.compensation().same_bits(acc.compensation()));
  }
}
