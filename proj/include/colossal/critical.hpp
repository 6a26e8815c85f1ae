#pragma once

// Critical parameters F(p,k) and the decreasing stream of the set E.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "colossal/ext_real.hpp"
#include "colossal/primes.hpp"

namespace colossal {

struct PrimeLevel {
  std::uint64_t p = 0;
  int k = 0;
  friend bool operator==(PrimeLevel, PrimeLevel) = default;
};

/// F(p,k) together with the two logarithms it is built from:
/// eps = log_gain / log_p, log_gain = log(1 + 1/(p + ... + p^k)).
struct CriticalValue {
  PrimeLevel at;
  ExtReal log_p;
  ExtReal log_gain;
  ExtReal eps;
  double approx = 0.0;
};

/// Exact geometric sum in rational form, then one extended-precision log1p.
CriticalValue critical_value(std::uint64_t p, int k, Precision precision = {});

/// F(x,k) = log(1 + 1/(x + ... + x^k)) / log x.
ExtReal eval_F(std::uint64_t x, int k, Precision precision = {});
ExtReal eval_F(const ExtReal& x, int k);
ExtReal eval_F(double x, int k, Precision precision = {});

enum class EpsOrder { Less, Greater, Tie };

const char* to_string(EpsOrder order);

/// Interval comparison of two values as given; Tie when they overlap.
EpsOrder compare_eps(const ExtReal& a, const ExtReal& b);

/// Compares F(a) with F(b), re-evaluating both at 60 and 120 digits while the
/// intervals overlap. `escalations` (if non-null) counts re-evaluations.
EpsOrder compare_eps(PrimeLevel a, PrimeLevel b, Precision base = {}, int* escalations = nullptr);

/// One element of E with every (p,k) attaining it (several only on a tie).
struct StepMember {
  PrimeLevel at;
  ExtReal log_p;
  ExtReal log_gain;
};

struct CriticalStep {
  ExtReal eps;
  std::vector<StepMember> members;
};

struct StreamEvent {
  enum class Kind { Escalation, Tie };
  Kind kind;
  PrimeLevel a;
  PrimeLevel b;
  std::string detail;
};

/// Emits E in strictly decreasing order, restricted to level-1 primes <= pmax.
/// The frontier holds one candidate per entered level (the smallest prime not
/// yet raised to that level) plus (2, K+1).
class ParamStream {
 public:
  ParamStream(const PrimeSieve& sieve, std::uint64_t pmax, Precision precision = {});

  /// Resumes after a prefix of the stream. boundaries[k-1] is the largest
  /// prime already raised to level k; `emitted` is the prefix length.
  ParamStream(const PrimeSieve& sieve, std::uint64_t pmax, Precision precision,
              std::span<const std::uint64_t> boundaries, std::uint64_t emitted);

  /// Next step, or nullopt once the largest remaining element needs a level-1
  /// prime above pmax.
  std::optional<CriticalStep> next();

  std::uint64_t pmax() const { return pmax_; }
  std::uint64_t emitted_count() const { return emitted_; }
  std::uint64_t escalations() const { return escalations_; }
  std::uint64_t ties() const { return ties_; }
  const std::vector<StreamEvent>& events() const { return events_; }
  /// Number of candidates currently held (levels entered + 1).
  std::size_t frontier_size() const { return frontier_.size(); }

 private:
  EpsOrder order(const CriticalValue& a, const CriticalValue& b);
  void replace(std::size_t level_index, std::uint64_t p);

  const PrimeSieve* sieve_;
  std::uint64_t pmax_;
  Precision precision_;
  std::vector<CriticalValue> frontier_;  // frontier_[k-1] holds the level-k candidate
  std::optional<CriticalValue> last_;
  bool exhausted_ = false;
  std::uint64_t emitted_ = 0;
  std::uint64_t escalations_ = 0;
  std::uint64_t ties_ = 0;
  std::vector<StreamEvent> events_;
};

/// x_k > 1 with F(x_k, k) = eps. Throws no-solution for eps <= 0 or when the
/// root lies below 1 + 1e-6 or the iteration cap is hit.
ExtReal solve_xk(const ExtReal& eps, int k);

/// Largest K with F(2,K) >= eps (an overlap counts as equality).
int max_level(const ExtReal& eps);

/// u = log t0, the root of eps * u * log u = 1.
ExtReal solve_t0(const ExtReal& eps);

}  // namespace colossal
