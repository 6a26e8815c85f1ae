#include <cmath>
#include <filesystem>

#include "colossal/checkpoint.hpp"
#include "colossal/errors.hpp"
#include "colossal/generator.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace colossal;
using colossal::testing::encloses;
using colossal::testing::near;

namespace {

std::vector<CARecord> run(std::uint64_t pmax) {
  std::vector<CARecord> out;
  generate(pmax, [&](const CARecord& r) { out.push_back(r); });
  return out;
}

}  // namespace

TEST_SUITE("generator") {
  TEST_CASE("first records") {
    const auto rs = run(47);
    REQUIRE(rs.size() == 26);
    CHECK(encloses(rs[0].log_n, "0.693147180559945309417232121458", 1e-28));
    CHECK(encloses(rs[0].log_rho, "0.405465108108164381978013115464", 1e-28));
    CHECK(std::fabs(rs[0].G.approx() - -4.0926) < 1e-4);
    CHECK(std::fabs(rs[2].G.approx() - 2.5634) < 1e-4);
    CHECK(encloses(rs[7].log_n, "8.52516136106541430016553103635", 1e-27));
    CHECK(std::fabs(rs[7].G.approx() - 1.7910) < 1e-4);
    CHECK(std::fabs(rs[8].G.approx() - 1.7512) < 1e-4);
    CHECK(rs[0].label == ClassLabel::CA1);
    CHECK(rs[5].label == ClassLabel::CA2);  // 360
    CHECK(rs[13].label == ClassLabel::CA3);  // 367567200
    for (int i = 0; i < 13; ++i) CHECK(rs[i].label != ClassLabel::CA3);
    CHECK(rs[8].P == 11);
    CHECK(rs[13].next_prime == 19);
  }

  TEST_CASE("pmax = 2") {
    const auto rs = run(2);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].label == ClassLabel::CA1);
  }

  TEST_CASE("census counts at 1e3 and 1e5") {
    Summary s = generate(1000, [](const CARecord&) {});
    CHECK(s.total == 203);
    CHECK(s.ca1 == 6);
    CHECK(s.ca2 == 40);
    CHECK(s.ca3 == 157);
    s = generate(100'000, [](const CARecord&) {});
    CHECK(s.total == 9734);
    CHECK(s.ca1 == 83);
    CHECK(s.ca2 == 143);
    CHECK(s.ca3 == 9508);
  }

  TEST_CASE("record invariants") {
    const auto rs = run(20'000);
    for (std::size_t i = 1; i < rs.size(); ++i) {
      CHECK(rs[i].index == rs[i - 1].index + 1);
      CHECK(compare(rs[i].log_n, rs[i - 1].log_n) == IntervalOrder::Greater);
      CHECK(compare(rs[i].eps, rs[i - 1].eps) == IntervalOrder::Less);
      CHECK(rs[i].G.radius() < 1e-20);
    }
  }

  TEST_CASE("apply_step guards the exponent order") {
    CAState state;
    const PrimeSieve sieve(1000);
    ParamStream s(sieve, 47);
    apply_step(state, *s.next());  // 2^1
    CriticalStep bad{eval_F(std::uint64_t{2}, 3), {StepMember{{2, 3}, ExtReal(), ExtReal()}}};
    CHECK_THROWS_AS(apply_step(state, bad), Error);
  }

  TEST_CASE("fresh sums agree with the incremental state") {
    const PrimeSieve sieve(1'000'000 + kSieveMargin);
    CAGenerator gen(sieve, 1'000'000);
    while (gen.next()) {
    }
    const FreshSums fresh = recompute_fresh(gen.state(), sieve);
    const double ln = gen.state().log_n.value().approx();
    CHECK(std::fabs(ln - fresh.log_n.approx()) / ln <= 1e-12);
    CHECK(compare(gen.state().log_n.value(), fresh.log_n) == IntervalOrder::Overlap);
    CHECK(compare(gen.state().log_rho.value(), fresh.log_rho) == IntervalOrder::Overlap);
  }

  TEST_CASE("fresh sum for n = 5040") {
    const PrimeSieve sieve(1000);
    CAGenerator gen(sieve, 47);
    for (int i = 0; i < 8; ++i) gen.next();
    CHECK(encloses(recompute_fresh(gen.state(), sieve).log_n, "8.52516136106541430016553103635", 1e-27));
  }
}

TEST_SUITE("checkpoint") {
  TEST_CASE("json round trip") {
    const PrimeSieve sieve(20'000);
    CAGenerator gen(sieve, 10'000);
    for (int i = 0; i < 500; ++i) gen.next();
    const Checkpoint cp = gen.checkpoint();
    CHECK(checkpoint_from_json(to_json(cp)) == cp);
    const auto path = std::filesystem::temp_directory_path() / "colossal_unit_ckpt.json";
    write_checkpoint(path.string(), cp);
    CHECK(read_checkpoint(path.string()) == cp);
    std::filesystem::remove(path);
  }

  TEST_CASE("resume reproduces the uninterrupted run bit for bit") {
    const PrimeSieve sieve(100'000 + kSieveMargin);
    CAGenerator full(sieve, 100'000);
    CAGenerator part(sieve, 100'000);
    for (int i = 0; i < 1000; ++i) {
      full.next();
      part.next();
    }
    const Checkpoint cp = checkpoint_from_json(to_json(part.checkpoint()));
    CAGenerator resumed(sieve, 100'000, cp);
    std::uint64_t n = 0;
    while (auto a = full.next()) {
      auto b = resumed.next();
      REQUIRE(b);
      CHECK(a->index == b->index);
      CHECK(a->log_n.same_bits(b->log_n));
      CHECK(a->G.same_bits(b->G));
      CHECK(a->label == b->label);
      ++n;
    }
    CHECK_FALSE(resumed.next());
    CHECK(n == 9734 - 1000);
  }

  TEST_CASE("corrupt input is rejected") {
    CHECK_THROWS_AS(checkpoint_from_json("{"), Error);
    CHECK_THROWS_AS(checkpoint_from_json("{\"format_version\": 99}"), Error);
    const PrimeSieve sieve(20'000);
    CAGenerator gen(sieve, 1000);
    for (int i = 0; i < 50; ++i) gen.next();
    Checkpoint cp = gen.checkpoint();
    cp.ca1 += 1;
    CHECK_THROWS_AS(CAGenerator(sieve, 1000, cp), Error);
  }
}
