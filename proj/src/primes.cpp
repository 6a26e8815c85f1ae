#include "colossal/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "colossal/errors.hpp"
#include "colossal/kernels.hpp"

namespace colossal {

namespace {

// Odd indices per sieve segment (2^20 numbers, 64 KiB of bitmap).
constexpr std::uint64_t kSegmentBits = std::uint64_t{1} << 19;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

unsigned __int128 pow_saturating(std::uint64_t base, unsigned k) {
  constexpr unsigned __int128 cap = static_cast<unsigned __int128>(1) << 126;
  unsigned __int128 r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= base;
    if (r > cap) return cap;
  }
  return r;
}

// floor(v^(1/k))
std::uint64_t integer_root(unsigned __int128 v, unsigned k) {
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(v), 1.0L / k));
  while (r > 0 && pow_saturating(r, k) > v) --r;
  while (pow_saturating(r + 1, k) <= v) ++r;
  return r;
}

}  // namespace

PrimeSieve::PrimeSieve(std::uint64_t limit) : limit_(limit) {
  if (limit < 3) throw Error(ErrorKind::InvalidArgument, "sieve limit must be >= 3");
  const std::uint64_t n_odd = (limit - 1) / 2 + 1;
  words_.assign((n_odd + 63) / 64, ~std::uint64_t{0});
  if (n_odd % 64 != 0) words_.back() &= (std::uint64_t{1} << (n_odd % 64)) - 1;
  words_[0] &= ~std::uint64_t{1};  // 1 is not prime

  const std::uint64_t root = isqrt(limit);
  std::vector<char> small(root + 1, 1);
  std::vector<std::uint64_t> base;
  for (std::uint64_t q = 3; q <= root; q += 2) {
    if (!small[q]) continue;
    base.push_back(q);
    for (std::uint64_t m = q * q; m <= root; m += 2 * q) small[m] = 0;
  }

  std::vector<std::uint64_t> next(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) next[i] = (base[i] * base[i] - 1) / 2;

  for (std::uint64_t seg = 0; seg < n_odd; seg += kSegmentBits) {
    const std::uint64_t seg_end = std::min(seg + kSegmentBits, n_odd);
    for (std::size_t i = 0; i < base.size(); ++i) {
      std::uint64_t j = next[i];
      const std::uint64_t step = base[i];
      for (; j < seg_end; j += step) words_[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
      next[i] = j;
    }
  }
}

PrimeSieve build_sieve(std::uint64_t limit) { return PrimeSieve(limit); }

bool PrimeSieve::is_prime(std::uint64_t n) const {
  if (n > limit_) throw Error(ErrorKind::SieveExhausted, "is_prime(" + std::to_string(n) + ") beyond sieve limit");
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  return odd_bit((n - 1) / 2);
}

std::uint64_t PrimeSieve::next_prime(std::uint64_t x) const {
  if (x < 2) return 2;
  std::uint64_t n = x + 1;
  if (n % 2 == 0) ++n;
  if (n > limit_) throw Error(ErrorKind::SieveExhausted, "next_prime(" + std::to_string(x) + ") beyond sieve limit");
  std::uint64_t idx = (n - 1) / 2;
  std::size_t w = idx >> 6;
  std::uint64_t word = words_[w] & (~std::uint64_t{0} << (idx & 63));
  while (word == 0) {
    if (++w == words_.size()) {
      throw Error(ErrorKind::SieveExhausted, "next_prime(" + std::to_string(x) + ") beyond sieve limit");
    }
    word = words_[w];
  }
  return 2 * (w * 64 + static_cast<std::uint64_t>(std::countr_zero(word))) + 1;
}

std::uint64_t PrimeSieve::count_primes(std::uint64_t x) const {
  if (x > limit_) throw Error(ErrorKind::SieveExhausted, "count_primes beyond sieve limit");
  if (x < 2) return 0;
  const std::uint64_t last = (x - 1) / 2;  // inclusive odd index
  std::uint64_t count = 1;
  const std::size_t full = last >> 6;
  for (std::size_t w = 0; w < full; ++w) count += static_cast<std::uint64_t>(std::popcount(words_[w]));
  const unsigned rem = static_cast<unsigned>(last & 63);
  const std::uint64_t mask = rem == 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << (rem + 1)) - 1;
  count += static_cast<std::uint64_t>(std::popcount(words_[full] & mask));
  return count;
}

std::vector<std::uint32_t> PrimeSieve::primes_up_to(std::uint64_t x) const {
  if (x > limit_) throw Error(ErrorKind::SieveExhausted, "primes_up_to beyond sieve limit");
  if (x >= (std::uint64_t{1} << 32)) throw Error(ErrorKind::InvalidArgument, "primes_up_to needs x < 2^32");
  std::vector<std::uint32_t> out;
  if (x < 2) return out;
  out.reserve(static_cast<std::size_t>(1.3 * static_cast<double>(x) / std::max(1.0, std::log(static_cast<double>(x)))) + 8);
  out.push_back(2);
  const std::uint64_t last = (x - 1) / 2;
  for (std::size_t w = 0; w <= (last >> 6); ++w) {
    std::uint64_t word = words_[w];
    while (word != 0) {
      const std::uint64_t idx = w * 64 + static_cast<std::uint64_t>(std::countr_zero(word));
      if (idx > last) return out;
      out.push_back(static_cast<std::uint32_t>(2 * idx + 1));
      word &= word - 1;
    }
  }
  return out;
}

ExtReal sum_prime_logs(std::span<const std::uint32_t> primes, Precision precision) {
  const mpfr_prec_t bits = precision.bits();
  if (primes.empty()) return ExtReal(bits);
  std::vector<double> logs(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) logs[i] = std::log(static_cast<double>(primes[i]));
  const auto s = kernels::cascade_sum(logs);
  ExtReal r = ExtReal::from_double(s.hi, bits) + ExtReal::from_double(s.lo, bits);
  // libm log is within one ulp; budget two ulps per term.
  const double log_error = mul_up(std::fabs(s.hi) + std::fabs(s.lo), 0x1p-51 * (1.0 + 0x1p-40));
  r.widen(add_up(s.error_bound, log_error));
  return r;
}

namespace {

ExtReal theta_from_primes(std::span<const std::uint32_t> primes, Precision precision) {
  ExtReal total(precision.bits());
  std::size_t i = 0;
  for (; i + kThetaBlock <= primes.size(); i += kThetaBlock) {
    total = total + sum_prime_logs(primes.subspan(i, kThetaBlock), precision);
  }
  if (i < primes.size()) total = total + sum_prime_logs(primes.subspan(i), precision);
  return total;
}

std::uint64_t floor_checked(double x, const PrimeSieve& sieve) {
  if (!(x >= 0.0)) throw Error(ErrorKind::InvalidArgument, "theta needs x > 0");
  const double f = std::floor(x);
  if (f > static_cast<double>(sieve.limit())) {
    throw Error(ErrorKind::SieveExhausted, "theta argument beyond sieve limit");
  }
  return static_cast<std::uint64_t>(f);
}

}  // namespace

ExtReal theta(const PrimeSieve& sieve, double x, Precision precision) {
  const std::uint64_t m = floor_checked(x, sieve);
  if (m < 2) return ExtReal(precision.bits());
  const auto primes = sieve.primes_up_to(m);
  return theta_from_primes(primes, precision);
}

int psi0_levels(double x) {
  if (!(x >= 2.0)) throw Error(ErrorKind::InvalidArgument, "psi0 needs x >= 2");
  int k = 1;
  const long double lx = x;
  while (static_cast<long double>(k + 1) * lx >= std::ldexp(1.0L, k + 1)) ++k;
  return k;
}

namespace {

std::vector<std::uint64_t> psi0_arguments_impl(double x, const PrimeSieve* sieve) {
  const int levels = psi0_levels(x);
  std::vector<std::uint64_t> args;
  args.reserve(static_cast<std::size_t>(levels));
  const bool integral = std::floor(x) == x && x < 0x1p62;
  args.push_back(static_cast<std::uint64_t>(std::floor(x)));
  for (int k = 2; k <= levels; ++k) {
    if (integral) {
      const auto v = static_cast<unsigned __int128>(static_cast<std::uint64_t>(x)) * static_cast<unsigned>(k);
      args.push_back(integer_root(v, static_cast<unsigned>(k)));
      continue;
    }
    mpfr_t lo, hi;
    mpfr_inits2(256, lo, hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_d(lo, x, MPFR_RNDN);  // exact
    mpfr_mul_ui(lo, lo, static_cast<unsigned long>(k), MPFR_RNDN);  // exact at 256 bits
    mpfr_set(hi, lo, MPFR_RNDN);
    mpfr_rootn_ui(lo, lo, static_cast<unsigned long>(k), MPFR_RNDD);
    mpfr_rootn_ui(hi, hi, static_cast<unsigned long>(k), MPFR_RNDU);
    mpfr_floor(lo, lo);
    mpfr_floor(hi, hi);
    const std::uint64_t f_lo = mpfr_get_uj(lo, MPFR_RNDN);
    const std::uint64_t f_hi = mpfr_get_uj(hi, MPFR_RNDN);
    mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr));
    if (f_lo != f_hi && (sieve == nullptr || sieve->is_prime(f_hi))) {
      throw Error(ErrorKind::InvalidArgument,
                  "(kx)^(1/k) indistinguishable from the prime " + std::to_string(f_hi) + " at k=" + std::to_string(k));
    }
    // a non-prime floor candidate leaves theta unchanged
    args.push_back(f_lo);
  }
  return args;
}

}  // namespace

std::vector<std::uint64_t> psi0_arguments(double x) { return psi0_arguments_impl(x, nullptr); }

ExtReal psi0(const PrimeSieve& sieve, double x, Precision precision) {
  ExtReal total(precision.bits());
  for (const std::uint64_t m : psi0_arguments_impl(x, &sieve)) {
    total = total + theta(sieve, static_cast<double>(m), precision);
  }
  return total;
}

ThetaTable::ThetaTable(const PrimeSieve& sieve, std::uint64_t upto, Precision precision)
    : upto_(upto), precision_(precision), primes_(sieve.primes_up_to(upto)) {
  block_prefix_.reserve(primes_.size() / kThetaBlock + 1);
  ExtReal total(precision.bits());
  block_prefix_.push_back(total);
  for (std::size_t i = 0; i + kThetaBlock <= primes_.size(); i += kThetaBlock) {
    total = total + sum_prime_logs(std::span(primes_).subspan(i, kThetaBlock), precision);
    block_prefix_.push_back(total);
  }
  sieve_ = &sieve;
}

ExtReal ThetaTable::theta(std::uint64_t x) const {
  if (x > upto_) throw Error(ErrorKind::SieveExhausted, "ThetaTable query beyond its range");
  const auto count = static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
  const std::size_t blocks = count / kThetaBlock;
  const ExtReal& base = block_prefix_[blocks];
  if (count == blocks * kThetaBlock) return base;
  return base + sum_prime_logs(std::span(primes_).subspan(blocks * kThetaBlock, count - blocks * kThetaBlock), precision_);
}

ExtReal ThetaTable::psi0(double x) const {
  ExtReal total(precision_.bits());
  for (const std::uint64_t m : psi0_arguments_impl(x, sieve_)) total = total + theta(m);
  return total;
}

}  // namespace colossal
