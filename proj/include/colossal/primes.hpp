#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "colossal/ext_real.hpp"

namespace colossal {

/// Primality bitmap for 2..limit (odd numbers only; 2 is implicit).
/// Immutable after construction and safe to share across threads.
class PrimeSieve {
 public:
  /// Segmented sieve of Eratosthenes. Throws invalid-argument for limit < 3.
  explicit PrimeSieve(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }

  bool is_prime(std::uint64_t n) const;

  /// Smallest prime strictly greater than x; sieve-exhausted past the limit.
  std::uint64_t next_prime(std::uint64_t x) const;

  /// Number of primes <= x (x <= limit).
  std::uint64_t count_primes(std::uint64_t x) const;

  /// All primes <= x in ascending order (x <= limit, x < 2^32).
  std::vector<std::uint32_t> primes_up_to(std::uint64_t x) const;

 private:
  bool odd_bit(std::uint64_t index) const { return (words_[index >> 6] >> (index & 63)) & 1U; }

  std::uint64_t limit_;
  std::vector<std::uint64_t> words_;  // bit i <-> 2i+1
};

/// Margin added past pmax so that next_prime succeeds for every prime <= pmax.
inline constexpr std::uint64_t kSieveMargin = 10'000;

PrimeSieve build_sieve(std::uint64_t limit);

/// theta(x) = sum of log p over primes p <= floor(x).
ExtReal theta(const PrimeSieve& sieve, double x, Precision precision = {});

/// psi_0(x) = sum_{k=1..K} theta((kx)^(1/k)), K the largest k with (kx)^(1/k) >= 2.
ExtReal psi0(const PrimeSieve& sieve, double x, Precision precision = {});

/// Integer arguments floor((kx)^(1/k)) for k = 1..K, K as in psi0 (x >= 2).
/// For non-integral x the root is evaluated in extended precision; an
/// ambiguous floor next to a prime throws invalid-argument.
std::vector<std::uint64_t> psi0_arguments(double x);

/// Largest K with k*x >= 2^k, i.e. (Kx)^(1/K) >= 2.
int psi0_levels(double x);

/// Prefix sums of log p in fixed blocks, for many theta / psi0 queries over
/// one range. Results are bit-identical to theta() / psi0().
class ThetaTable {
 public:
  ThetaTable(const PrimeSieve& sieve, std::uint64_t upto, Precision precision = {});

  std::uint64_t upto() const { return upto_; }
  ExtReal theta(std::uint64_t x) const;
  ExtReal psi0(double x) const;

 private:
  std::uint64_t upto_;
  Precision precision_;
  std::vector<std::uint32_t> primes_;
  std::vector<ExtReal> block_prefix_;  // theta through the first b blocks
  const PrimeSieve* sieve_ = nullptr;  // must outlive the table
};

/// Number of primes per summation block (fixes the summation order).
inline constexpr std::size_t kThetaBlock = 1024;

/// Sum of log p over a run of primes, as an ExtReal (double logs, cascaded).
ExtReal sum_prime_logs(std::span<const std::uint32_t> primes, Precision precision);

}  // namespace colossal
