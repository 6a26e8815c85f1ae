#include <cmath>
#include <random>

#include "colossal/errors.hpp"
#include "colossal/kernels.hpp"
#include "colossal/primes.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace colossal;
using colossal::testing::encloses;

namespace {

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("primes") {
  TEST_CASE("sieve agrees with trial division") {
    const PrimeSieve sieve(200'000);
    for (std::uint64_t n = 0; n <= 200'000; n += (n < 5000 ? 1 : 97)) CHECK(sieve.is_prime(n) == trial_prime(n));
    CHECK(sieve.count_primes(100'000) == 9592);
    CHECK(sieve.next_prime(2) == 3);
    CHECK(sieve.next_prime(47) == 53);
    CHECK(sieve.next_prime(99'989) == 99'991);
    CHECK_THROWS_AS(sieve.next_prime(199'999), Error);
  }

  TEST_CASE("primes_up_to") {
    const PrimeSieve sieve(1000);
    const auto ps = sieve.primes_up_to(30);
    CHECK(ps == std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  }

  TEST_CASE("pi(1e8)") {
    const PrimeSieve sieve(100'000'000);
    CHECK(sieve.count_primes(100'000'000) == 5'761'455);
  }

  TEST_CASE("theta and psi0 small values") {
    const PrimeSieve sieve(10'000);
    CHECK(encloses(theta(sieve, 10.0), "5.34710753071746868051858943505", 1e-28));
    CHECK(encloses(theta(sieve, 2.0), "0.693147180559945309417232121458", 1e-28));
    CHECK(psi0_levels(10.0) == 5);
    CHECK(psi0_arguments(10.0) == std::vector<std::uint64_t>{10, 4, 3, 2, 2});
    CHECK(encloses(psi0(sieve, 10.0), "10.3169208302934693009780083947", 1e-28));
    CHECK(encloses(psi0(sieve, 2.0), "1.38629436111989061883446424291635", 1e-28));
  }

  TEST_CASE("theta table matches direct summation bit for bit") {
    const PrimeSieve sieve(300'000);
    const ThetaTable table(sieve, 290'000);
    for (const std::uint64_t x : {2ULL, 3ULL, 1000ULL, 8191ULL, 8192ULL, 123'457ULL, 290'000ULL}) {
      CAPTURE(x);
      CHECK(table.theta(x).same_bits(theta(sieve, static_cast<double>(x))));
    }
    CHECK(table.psi0(100'000.0).same_bits(psi0(sieve, 100'000.0)));
  }
}

TEST_SUITE("kernels") {
  TEST_CASE("cascade_sum: variants agree within their bounds") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.5, 20.0);
    for (const std::size_t n : {0UL, 1UL, 3UL, 4UL, 7UL, 1023UL, 1024UL, 100'001UL}) {
      std::vector<double> xs(n);
      for (auto& x : xs) x = std::log(u(rng)) * (rng() % 2 ? 1 : -1) * 1e3;
      const auto s = kernels::cascade_sum(xs, kernels::Isa::Scalar);
      long double ref = 0;
      for (double x : xs) ref += x;
      CAPTURE(n);
      CHECK(std::fabs(static_cast<double>((static_cast<long double>(s.hi) + s.lo) - ref)) <= s.error_bound + 1e-9);
      if (kernels::is_available(kernels::Isa::Avx2)) {
        const auto v = kernels::cascade_sum(xs, kernels::Isa::Avx2);
        const double diff = std::fabs((v.hi - s.hi) + (v.lo - s.lo));
        CHECK(diff <= v.error_bound + s.error_bound);
      }
    }
  }

  TEST_CASE("argmax_affine: variants are bit-identical") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const std::size_t n : {1UL, 2UL, 5UL, 8UL, 9UL, 1000UL, 65'537UL}) {
      std::vector<double> a(n), b(n);
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = u(rng);
        b[i] = std::log(static_cast<double>(i + 2));
      }
      if (n > 4) a[n / 2] = a[n / 3] = 5.0;  // tie: the smaller index wins
      for (const double eps : {0.0, 0.01, 0.5}) {
        const auto s = kernels::argmax_affine(a, b, eps, kernels::Isa::Scalar);
        std::size_t best = 0;
        for (std::size_t i = 1; i < n; ++i) {
          if (std::fma(-eps, b[i], a[i]) > std::fma(-eps, b[best], a[best])) best = i;
        }
        CHECK(s.index == best);
        if (kernels::is_available(kernels::Isa::Avx2)) {
          const auto v = kernels::argmax_affine(a, b, eps, kernels::Isa::Avx2);
          CHECK(v.index == s.index);
          CHECK(v.value == s.value);
        }
      }
    }
  }

  TEST_CASE("dispatch reports a usable variant") {
    CHECK(kernels::is_available(kernels::active_isa()));
    CHECK_THROWS_AS(kernels::argmax_affine({}, {}, 0.1), Error);
  }
}
