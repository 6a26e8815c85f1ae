#pragma once

// Numeric checks of the inequalities behind the CA1/CA2/CA3 analysis.
//
// Every check produces a CheckReport. A pass is interval-rigorous: the
// asserted relation holds for every value inside both operands' radii. Non-
// strict relations also pass when the intervals overlap (equality boundary).

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "colossal/ext_real.hpp"
#include "colossal/generator.hpp"
#include "colossal/primes.hpp"

namespace colossal {

enum class Verdict { Pass, Fail, Vacuous };
enum class Relation { Less, LessEq, Greater, GreaterEq };

const char* to_string(Verdict v);
const char* to_string(Relation r);

struct CheckReport {
  std::string id;
  std::string inputs;
  ExtReal lhs;
  ExtReal rhs;
  Relation relation = Relation::Less;
  Verdict verdict = Verdict::Vacuous;
  /// Relative slack in the asserted direction (negative on failure); NaN when vacuous.
  double margin = std::numeric_limits<double>::quiet_NaN();
  /// Reported but excluded from the pass/fail outcome.
  bool informational = false;
  std::string note;
};

CheckReport assert_relation(std::string id, std::string inputs, const ExtReal& lhs, Relation rel, const ExtReal& rhs,
                            bool informational = false);
CheckReport vacuous(std::string id, std::string inputs, std::string reason);

/// Per-id totals. Keeps the worst margin and the first failures.
struct Tally {
  std::uint64_t pass = 0;
  std::uint64_t fail = 0;
  std::uint64_t vacuous = 0;
  bool informational = false;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::string worst_inputs;
  std::vector<CheckReport> failures;  // at most kKeptFailures
  std::vector<std::string> vacuous_reasons;  // distinct reasons, capped

  static constexpr std::size_t kKeptFailures = 20;
  void add(const CheckReport& r);
};

class CheckLog {
 public:
  void add(const CheckReport& r);
  void add(std::span<const CheckReport> rs);
  void merge(const CheckLog& other);

  /// Ids in first-seen order.
  const std::vector<std::string>& ids() const { return order_; }
  const Tally& tally(const std::string& id) const { return by_id_.at(id); }
  bool has(const std::string& id) const { return by_id_.count(id) != 0; }

  /// Non-informational failures.
  std::uint64_t failures() const;
  std::uint64_t passes() const;
  std::uint64_t vacuous_count() const;

 private:
  std::vector<std::string> order_;
  std::map<std::string, Tally> by_id_;
};

// ---------------------------------------------------------------- lemmas

/// (L1.1), (L1.2), (L1.1'), (L1.2') for eps = F(p,1) at k = 1..kmax
/// (kmax <= 0 means max_level(eps)).
std::vector<CheckReport> check_lemma1(std::uint64_t p, int kmax = 0, Precision precision = {});

/// Lower and upper halves of (L2.2) for eps = F(p,1).
std::vector<CheckReport> check_lemma2(std::uint64_t p, Precision precision = {});

struct Lemma34Grid {
  int case1_points = 8;  // u1 in (u0 - 1/2, u0)
  int case2_points = 16;  // u2 in (u0, u0 log u0), log-spaced offsets
  int case3_points = 4;  // u1 offsets above u0, each with three gaps
};

/// Lemma 3 cases 1-3 and Lemma 4 parts 1-2 for eps = F(p,1). Vacuous when u0 <= 40.
std::vector<CheckReport> check_lemma34(std::uint64_t p, const Lemma34Grid& grid = {}, Precision precision = {});

/// f(x) = (2x)^(-1/2) sum_{k=3}^{K(x)} (kx)^(1/k), K(x) the largest K with 2^K/K <= x.
/// Throws invalid-argument below 8/3 (where K(x) < 3).
ExtReal f_lemma5(const ExtReal& x);
/// f at the discontinuity x = 2^K/K (evaluated exactly there).
ExtReal f_lemma5_at(int K, Precision precision = {});

struct Lemma5Table {
  int K;
  double value;  // two decimals
};
/// Local maxima f(2^K/K) for K = 3..16, to two decimals.
std::span<const Lemma5Table> lemma5_table();
inline constexpr double kLemma5Threshold = 0.10924;
inline constexpr double kLemma5AtK31 = 0.10923475;

std::vector<CheckReport> check_lemma5(Precision precision = {});

/// (L6.2) at each sample (vacuous for x <= 1e8). The table must reach every
/// sample.
std::vector<CheckReport> check_lemma6(const ThetaTable& table, std::span<const double> samples);

/// 64 integer points spread over [1e8, 1.001e8] plus 1e8 + 7.
std::vector<double> lemma6_default_samples();

// ---------------------------------------------------------------- records

/// Everything the record-level checks keep from a CARecord.
struct RecordView {
  std::uint64_t index = 0;
  std::vector<PrimeLevel> step;
  std::uint64_t P = 0;
  std::uint64_t next_prime = 0;
  ExtReal log_n;
  ExtReal G;
  ClassLabel label = ClassLabel::CA1;

  static RecordView of(const CARecord& r);
};

/// Streaming record checks; feed records in index order, then finish().
class RecordChecks {
 public:
  struct Enabled {
    bool thm1 = true;
    bool thm2 = true;
    bool thm3 = true;
    bool thm4 = true;
    bool chains = true;
    bool robin = true;
    bool lemma7_chain = false;  // log n <= psi0(P); needs a ThetaTable
    bool lemma7_bound = false;  // (L7.1) for P > 1e8
  };

  explicit RecordChecks(Enabled enabled, const ThetaTable* table = nullptr, Precision precision = {});

  void observe(const CARecord& record);
  void observe(const RecordView& record);
  /// Reports checks left open at the end of the run as vacuous.
  void finish();

  const CheckLog& log() const { return log_; }
  /// Largest G over records with n > 5040.
  std::optional<RecordView> max_G() const { return max_G_; }

 private:
  void theorem1(const RecordView& cur);
  void theorem2(const RecordView& cur);
  void theorem34(const RecordView& cur);
  void chains(const RecordView& cur);
  void robin(const RecordView& cur);
  void lemma7(const RecordView& cur);
  const ExtReal& log_t0(std::uint64_t p);

  Enabled enabled_;
  const ThetaTable* table_;
  Precision precision_;
  CheckLog log_;
  std::optional<RecordView> prev_;
  std::vector<RecordView> pending_thm2_;  // CA3 records waiting for their (p,1) step
  std::optional<RecordView> last_non_ca1_;
  std::vector<RecordView> pending_cor3_;  // CA3 records waiting for the next CA2
  std::optional<RecordView> max_G_;
  ExtReal e_gamma_;
  std::map<std::uint64_t, ExtReal> log_t0_cache_;
};

std::vector<CheckReport> check_theorem1(std::span<const CARecord> records);
std::vector<CheckReport> check_theorem2(std::span<const CARecord> records);
std::vector<CheckReport> check_theorem34(std::span<const CARecord> records);
std::vector<CheckReport> check_chains(std::span<const CARecord> records);

// ---------------------------------------------------------------- oracle

/// For each of the first `first_m` records, checks by exhaustive search over
/// 2 <= n <= limit that n_i maximizes rho(n)/n^eps at eps = eps_i (within
/// 1e-12) and uniquely between eps_{i+1} and eps_i. Needs first_m + 1 records.
std::vector<CheckReport> brute_force_ca_oracle(std::uint64_t limit, std::size_t first_m,
                                               std::span<const CARecord> records);

/// sigma(n) for 0 <= n <= limit (sigma(0) = 0), by a divisor-summing sieve.
std::vector<std::uint64_t> sigma_table(std::uint64_t limit);

}  // namespace colossal
