#pragma once

// CA numbers in factored form, one per element of E.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "colossal/accumulator.hpp"
#include "colossal/critical.hpp"
#include "colossal/primes.hpp"

namespace colossal {

enum class ClassLabel { CA1, CA2, CA3 };

const char* to_string(ClassLabel label);

/// n = prod_p p^{a_p} stored as boundaries: boundaries[k-1] is the largest
/// prime with exponent >= k, so a_p = #{k : boundaries[k-1] >= p}.
struct CAState {
  explicit CAState(mpfr_prec_t bits = Precision{}.bits());

  std::uint64_t index = 0;  // 0 is n = 1
  std::vector<std::uint64_t> boundaries;
  CompensatedAccumulator log_n;
  CompensatedAccumulator log_rho;  // log(sigma(n)/n)

  std::uint64_t P() const { return boundaries.empty() ? 1 : boundaries.front(); }
  int exponent(std::uint64_t p) const;
};

/// Raises each member prime by one level. Throws stream-order-violation if a
/// member's current exponent is not k-1.
void apply_step(CAState& state, const CriticalStep& step);

/// G(n) = rho(n) / log log n.
ExtReal compute_G(const CAState& state);

/// Fresh (log n, log rho) from the boundary list, summed in ascending primes.
struct FreshSums {
  ExtReal log_n;
  ExtReal log_rho;
};
FreshSums recompute_fresh(const CAState& state, const PrimeSieve& sieve, Precision precision = {});

/// CA1 / CA2 / CA3 by comparing log n with P and the next prime. If an
/// interval comparison is inconclusive log n is recomputed at 120 digits;
/// still inconclusive throws unresolved-class.
ClassLabel classify(const CAState& state, const PrimeSieve& sieve);

struct CARecord {
  std::uint64_t index = 0;
  std::vector<PrimeLevel> step;
  std::uint64_t P = 0;
  std::uint64_t next_prime = 0;
  ExtReal eps;
  ExtReal log_n;
  ExtReal log_rho;
  ExtReal G;
  ClassLabel label = ClassLabel::CA1;
};

/// Running totals over emitted records.
struct Summary {
  std::uint64_t pmax = 0;
  std::uint64_t total = 0;
  std::uint64_t ca1 = 0;
  std::uint64_t ca2 = 0;
  std::uint64_t ca3 = 0;
  /// Largest G over records with n > 5040 (index >= 9); index 0 if none.
  double max_G = 0.0;
  std::uint64_t max_G_index = 0;
  int max_level = 0;
  std::uint64_t escalations = 0;
  std::uint64_t ties = 0;
  std::uint64_t audits = 0;
  double max_audit_drift = 0.0;  // relative, over log n and log rho
  double elapsed_seconds = 0.0;
};

struct GeneratorOptions {
  Precision precision{};
  std::uint64_t audit_every = std::uint64_t{1} << 20;  // 0 disables audits
};

struct Checkpoint;

class CAGenerator {
 public:
  /// The sieve must reach past next_prime(pmax).
  CAGenerator(const PrimeSieve& sieve, std::uint64_t pmax, GeneratorOptions options = {});
  /// Continues from a checkpoint; records resume at checkpoint.step_index + 1.
  CAGenerator(const PrimeSieve& sieve, std::uint64_t pmax, const Checkpoint& checkpoint, GeneratorOptions options = {});

  std::optional<CARecord> next();

  const CAState& state() const { return state_; }
  const ParamStream& stream() const { return stream_; }
  Summary summary() const;
  Checkpoint checkpoint() const;

 private:
  void audit();

  const PrimeSieve* sieve_;
  GeneratorOptions options_;
  CAState state_;
  ParamStream stream_;
  Summary summary_;
};

/// Builds a sieve to pmax + kSieveMargin and runs the generator to the end.
Summary generate(std::uint64_t pmax, const std::function<void(const CARecord&)>& sink, GeneratorOptions options = {});

}  // namespace colossal
