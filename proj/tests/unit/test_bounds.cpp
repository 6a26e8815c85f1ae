#include <cmath>

#include "colossal/bounds.hpp"
#include "colossal/errors.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace colossal;

namespace {

std::vector<CARecord> run(std::uint64_t pmax) {
  std::vector<CARecord> out;
  generate(pmax, [&](const CARecord& r) { out.push_back(r); });
  return out;
}

const Tally* find(const std::vector<CheckReport>& rs, const std::string& id, CheckLog& log) {
  log = CheckLog{};
  log.add(rs);
  return log.has(id) ? &log.tally(id) : nullptr;
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("relation verdicts") {
    const ExtReal one = ExtReal::from_uint(1, 128);
    const ExtReal two = ExtReal::from_uint(2, 128);
    CHECK(assert_relation("x", "", one, Relation::Less, two).verdict == Verdict::Pass);
    CHECK(assert_relation("x", "", two, Relation::Less, one).verdict == Verdict::Fail);
    CHECK(assert_relation("x", "", one, Relation::Less, one).verdict == Verdict::Fail);
    const auto eq = assert_relation("x", "", one, Relation::LessEq, one);
    CHECK(eq.verdict == Verdict::Pass);
    CHECK(eq.note == "equality boundary");
    CHECK(assert_relation("x", "", two, Relation::Greater, one).margin == doctest::Approx(1.0));
    CHECK(std::isnan(vacuous("x", "", "why").margin));
  }

  TEST_CASE("log tallies and informational failures") {
    CheckLog log;
    const ExtReal one = ExtReal::from_uint(1, 128);
    log.add(assert_relation("a", "", one, Relation::Less, one));
    log.add(assert_relation("b", "", one, Relation::Less, one, true));
    log.add(vacuous("a", "", "r"));
    CHECK(log.failures() == 1);
    CHECK(log.tally("a").vacuous == 1);
    CHECK(log.ids() == std::vector<std::string>{"a", "b"});
  }

  TEST_CASE("lemma 1 and 2 at small primes") {
    CheckLog log;
    for (const std::uint64_t p : {2ULL, 3ULL, 5ULL, 47ULL, 1009ULL, 999'983ULL}) {
      log.add(check_lemma1(p, 0));
      log.add(check_lemma2(p));
    }
    CHECK(log.failures() == 0);
    CHECK(log.tally("L2.2-upper").pass == 6);
  }

  TEST_CASE("lemma 3/4 vacuous below u0 = 40") {
    const auto rs = check_lemma34(37);
    for (const auto& r : rs) CHECK(r.verdict == Verdict::Vacuous);
  }

  TEST_CASE("lemma 3 case 3 and lemma 4 part 2 hold; case 2 fails for wide gaps") {
    CheckLog log;
    log.add(check_lemma34(104'729));
    CHECK(log.tally("L3.2").fail == 0);
    CHECK(log.tally("L3.4").fail == 0);
    CHECK(log.tally("L4.2").fail == 0);
    // (u2 - u0)^2 / (2 u0^2 log u0) outgrows h(u2)/h0 well inside (u0, u0 log u0)
    CHECK(log.tally("L3.3").fail > 0);
    // h(u0 + 2) / h(u0 - 1/2) - 1 is about 2.04 / (u0^2 log u0) here, below 2.754
    CHECK(log.tally("L4.1").fail > 0);
  }

  TEST_CASE("lemma 5") {
    CHECK(f_lemma5_at(7).approx() == doctest::Approx(2.2124).epsilon(1e-4));
    CHECK(f_lemma5_at(3).approx() == doctest::Approx(0.866).epsilon(1e-3));
    CHECK(f_lemma5_at(31).approx() == doctest::Approx(0.0776021064).epsilon(1e-8));
    CHECK_THROWS_AS(f_lemma5(ExtReal::from_uint(2, 128)), Error);
    CheckLog log;
    log.add(check_lemma5());
    CHECK(log.tally("L5-table").fail == 0);
    CHECK(log.tally("L5.3-maxima").fail == 0);
    CHECK(log.tally("L5.2-decreasing").fail == 0);
    CHECK(log.tally("L5.4-bound").fail == 0);
    CHECK(log.tally("L5.4-value").fail == 1);
  }

  TEST_CASE("lemma 6 samples are vacuous below 1e8") {
    const PrimeSieve sieve(200'000);
    const ThetaTable table(sieve, 150'000);
    const std::vector<double> xs{1000.0, 100'000.0};
    for (const auto& r : check_lemma6(table, xs)) CHECK(r.verdict == Verdict::Vacuous);
    CHECK(lemma6_default_samples().size() == 65);
  }

  TEST_CASE("record checks at pmax 1e5") {
    const auto rs = run(100'000);
    CheckLog log;
    for (auto part : {check_theorem1(rs), check_theorem2(rs), check_theorem34(rs), check_chains(rs)}) {
      for (const auto& r : part) {
        CAPTURE(r.id);
        CHECK(r.verdict != Verdict::Fail);
      }
    }
    const PrimeSieve sieve(200'000);
    const ThetaTable table(sieve, 100'000);
    RecordChecks::Enabled e;
    e.lemma7_chain = e.lemma7_bound = true;
    RecordChecks checks(e, &table);
    for (const auto& r : rs) checks.observe(r);
    checks.finish();
    CHECK(checks.log().failures() == 0);
    CHECK(checks.log().tally("RI").pass == rs.size() - 8);
    CHECK(checks.log().tally("L7.2-chain").pass == rs.size());
    REQUIRE(checks.max_G());
    CHECK(checks.max_G()->G.approx() < 1.7810724179901979);
  }

  TEST_CASE("q = 2 steps after a CA3 record are vacuous for part 1") {
    const auto rs = run(100'000);
    RecordChecks::Enabled e;
    RecordChecks checks(e);
    for (const auto& r : rs) checks.observe(r);
    const Tally& t = checks.log().tally("3.part1");
    CHECK(t.fail == 0);
    CHECK(t.vacuous > 0);
    CHECK(t.vacuous_reasons == std::vector<std::string>{"q = 2 is open"});
  }

  TEST_CASE("sigma table and oracle") {
    const auto s = sigma_table(12);
    CHECK(s[12] == 28);
    CHECK(s[1] == 1);
    CHECK(s[7] == 8);
    const auto rs = run(47);
    CheckLog log;
    log.add(brute_force_ca_oracle(100'000, 10, rs));
    CHECK(log.failures() == 0);
    CHECK(log.tally("oracle-mid").pass == 9);
    CHECK(log.tally("oracle-mid").vacuous == 1);  // n_10 = 720720 lies beyond the search
  }
}
