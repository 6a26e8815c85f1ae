#include "colossal/critical.hpp"
#include "colossal/errors.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace colossal;
using colossal::testing::encloses;

TEST_SUITE("critical") {
  TEST_CASE("F(p,k) against 50-digit references") {
    CHECK(encloses(eval_F(std::uint64_t{2}, 1), "0.584962500721156181453738943948", 1e-29));
    CHECK(encloses(eval_F(std::uint64_t{5}, 1), "0.113282752559378345804672928035", 1e-29));
    CHECK(encloses(eval_F(std::uint64_t{2}, 2), "0.222392421336447925988230373284", 1e-29));
    CHECK(encloses(eval_F(std::uint64_t{2}, 3), "0.0995356735509144218820890562054", 1e-30));
    CHECK(encloses(eval_F(std::uint64_t{2}, 4), "0.0473057147783566794820652257383", 1e-30));
    CHECK(encloses(eval_F(std::uint64_t{2}, 5), "0.0230836131130412615433236059519", 1e-30));
    CHECK(encloses(eval_F(std::uint64_t{3}, 3), "0.0230452619595067851160193434624", 1e-30));
    CHECK(encloses(eval_F(std::uint64_t{7}, 1), "0.0686215613240665295425312340039", 1e-30));
    CHECK(encloses(eval_F(std::uint64_t{11}, 1), "0.0362865626271019410146402492933", 1e-30));
    CHECK(encloses(eval_F(std::uint64_t{31}, 1), "0.00924543291049925359258200146962", 1e-31));
    CHECK(encloses(eval_F(std::uint64_t{43}, 1), "0.00611228265381978747845248282792", 1e-31));
    CHECK(encloses(eval_F(std::uint64_t{101}, 1), "0.00213478638468034340624409835011", 1e-31));
  }

  TEST_CASE("the three F overloads agree") {
    const ExtReal a = eval_F(std::uint64_t{13}, 2);
    const ExtReal b = eval_F(ExtReal::from_uint(13, Precision{}.bits()), 2);
    const ExtReal c = eval_F(13.0, 2);
    CHECK(compare(a, b) == IntervalOrder::Overlap);
    CHECK(compare(a, c) == IntervalOrder::Overlap);
  }

  TEST_CASE("comparisons resolve neighbours and flag identical values") {
    CHECK(compare_eps(PrimeLevel{2, 5}, PrimeLevel{3, 3}) == EpsOrder::Greater);
    CHECK(compare_eps(PrimeLevel{11, 1}, PrimeLevel{2, 4}) == EpsOrder::Less);
    int esc = 0;
    CHECK(compare_eps(PrimeLevel{7, 2}, PrimeLevel{7, 2}, {}, &esc) == EpsOrder::Tie);
    CHECK(esc == 0);
    CHECK(compare_eps(PrimeLevel{99999989, 1}, PrimeLevel{99999971, 1}, {}, &esc) == EpsOrder::Less);
    CHECK(esc == 0);
  }

  TEST_CASE("stream emits E in decreasing order, first elements") {
    const PrimeSieve sieve(20'000);
    ParamStream s(sieve, 47);
    const PrimeLevel expected[] = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}, {7, 1}, {2, 4}, {11, 1}, {13, 1}};
    std::optional<ExtReal> prev;
    for (const auto& e : expected) {
      const auto step = s.next();
      REQUIRE(step);
      REQUIRE(step->members.size() == 1);
      CHECK(step->members[0].at == e);
      if (prev) CHECK(compare(step->eps, *prev) == IntervalOrder::Less);
      prev = step->eps;
    }
    std::uint64_t count = 10;
    while (s.next()) ++count;
    CHECK(count == 26);
    CHECK(s.ties() == 0);
  }

  TEST_CASE("pmax = 2 has a single element") {
    const PrimeSieve sieve(20'000);
    ParamStream s(sieve, 2);
    CHECK(s.next());
    CHECK_FALSE(s.next());
  }

  TEST_CASE("resumed stream continues identically") {
    const PrimeSieve sieve(120'000);
    ParamStream full(sieve, 100'000);
    std::vector<std::uint64_t> boundaries;
    for (int i = 0; i < 1000; ++i) {
      const auto st = full.next();
      for (const auto& m : st->members) {
        if (boundaries.size() < static_cast<std::size_t>(m.at.k)) boundaries.resize(m.at.k);
        boundaries[m.at.k - 1] = m.at.p;
      }
    }
    ParamStream resumed(sieve, 100'000, {}, boundaries, 1000);
    for (int i = 0; i < 2000; ++i) {
      const auto a = full.next();
      const auto b = resumed.next();
      REQUIRE(a);
      REQUIRE(b);
      CHECK(a->members[0].at == b->members[0].at);
      CHECK(a->eps.same_bits(b->eps));
    }
  }

  TEST_CASE("solvers") {
    const ExtReal e47 = eval_F(std::uint64_t{47}, 1);
    CHECK(encloses(solve_xk(e47, 1), "47", 1e-25));
    CHECK(encloses(solve_xk(e47, 2), "8.684504473355441827635522454693842855309", 1e-25));
    CHECK(encloses(solve_xk(e47, 3), "4.558367587122371202907384203323478004096", 1e-25));
    CHECK(max_level(e47) == 7);
    CHECK(max_level(eval_F(std::uint64_t{2}, 1)) == 1);
    CHECK(max_level(eval_F(std::uint64_t{99'999'989}, 1)) == 30);
    CHECK(encloses(solve_t0(eval_F(std::uint64_t{2}, 1)), "2.18594324622719419861398651772", 1e-25));
    CHECK(encloses(solve_t0(eval_F(std::uint64_t{43}, 1)), "43.3930948204911809130522446312", 1e-25));
    CHECK(encloses(solve_t0(eval_F(std::uint64_t{101}, 1)), "101.410131811269782266751722207", 1e-25));
    CHECK_THROWS_AS(solve_xk(ExtReal::from_uint(0, 128), 2), Error);
  }
}
