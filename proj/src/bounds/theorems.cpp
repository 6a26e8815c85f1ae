#include <cmath>
#include <string>

#include "colossal/bounds.hpp"
#include "colossal/critical.hpp"
#include "colossal/errors.hpp"

namespace colossal {

namespace {

constexpr std::uint64_t kRobinFromIndex = 9;  // n_8 = 5040
constexpr std::uint64_t kLargeP = 100'000'000;

ExtReal constant(const char* text, mpfr_prec_t bits) {
  ExtReal c = ExtReal::parse(text, "0", bits);
  c.widen(ulp_bound(c.get()));
  return c;
}

std::string idx(const RecordView& r) { return "i=" + std::to_string(r.index); }

std::string pair(const RecordView& a, const RecordView& b) { return idx(a) + " j=" + std::to_string(b.index); }

}  // namespace

RecordView RecordView::of(const CARecord& r) {
  RecordView v;
  v.index = r.index;
  v.step = r.step;
  v.P = r.P;
  v.next_prime = r.next_prime;
  v.log_n = r.log_n;
  v.G = r.G;
  v.label = r.label;
  return v;
}

RecordChecks::RecordChecks(Enabled enabled, const ThetaTable* table, Precision precision)
    : enabled_(enabled), table_(table), precision_(precision), e_gamma_(exp_euler_gamma(precision.bits())) {
  if ((enabled.lemma7_chain) && table == nullptr) {
    throw Error(ErrorKind::InvalidArgument, "the log n <= psi0(P) chain needs a ThetaTable");
  }
}

void RecordChecks::observe(const CARecord& record) { observe(RecordView::of(record)); }

void RecordChecks::observe(const RecordView& cur) {
  if (enabled_.thm1) theorem1(cur);
  if (enabled_.thm2) theorem2(cur);
  if (enabled_.thm3 || enabled_.thm4) theorem34(cur);
  if (enabled_.chains) chains(cur);
  if (enabled_.robin) robin(cur);
  if (enabled_.lemma7_chain || enabled_.lemma7_bound) lemma7(cur);
  prev_ = cur;
}

void RecordChecks::finish() {
  for (const auto& r : pending_thm2_) {
    log_.add(vacuous("2.1", idx(r), "run ended before the (next prime, 1) step"));
  }
  pending_thm2_.clear();
  for (const auto& r : pending_cor3_) log_.add(vacuous("C3", idx(r), "run ended before the next CA2 record"));
  pending_cor3_.clear();
}

const ExtReal& RecordChecks::log_t0(std::uint64_t p) {
  auto it = log_t0_cache_.find(p);
  if (it == log_t0_cache_.end()) it = log_t0_cache_.emplace(p, solve_t0(eval_F(p, 1, precision_))).first;
  return it->second;
}

// G(n_i) < G(n_{i-1}) prod (1 - (log q / (p log p))^2) for CA1 n_i, i >= 3.
void RecordChecks::theorem1(const RecordView& cur) {
  if (cur.label != ClassLabel::CA1) return;
  const char* id = cur.step.size() == 1 ? "1.1" : "1.2";
  if (cur.index < 3 || !prev_) {
    log_.add(vacuous(id, idx(cur), "i < 3"));
    return;
  }
  const mpfr_prec_t bits = precision_.bits();
  const ExtReal one = ExtReal::from_uint(1, bits);
  const ExtReal P = ExtReal::from_uint(cur.P, bits);
  const ExtReal denom = P * colossal::log(P);
  ExtReal factor = one;
  for (const auto& m : cur.step) factor = factor * (one - square(colossal::log(ExtReal::from_uint(m.p, bits)) / denom));
  log_.add(assert_relation(id, idx(cur), cur.G, Relation::Less, prev_->G * factor));
}

// G(n_j) > G(n_i) (1 + 3.2961 / ((log t0)^2 log log t0)) for CA3 n_i, with n_j
// the record whose step contains (p, 1), p the prime after P(n_i).
void RecordChecks::theorem2(const RecordView& cur) {
  const mpfr_prec_t bits = precision_.bits();
  for (const auto& m : cur.step) {
    if (m.k != 1 || pending_thm2_.empty()) continue;
    const ExtReal& u0 = log_t0(m.p);
    const ExtReal factor = ExtReal::from_uint(1, bits) + constant("3.2961", bits) / (square(u0) * colossal::log(u0));
    std::vector<RecordView> keep;
    for (auto& r : pending_thm2_) {
      if (r.next_prime != m.p) {
        keep.push_back(std::move(r));
        continue;
      }
      log_.add(assert_relation("2.1", pair(r, cur) + " p=" + std::to_string(m.p), cur.G, Relation::Greater,
                               r.G * factor));
    }
    pending_thm2_ = std::move(keep);
  }
  if (cur.label == ClassLabel::CA3) pending_thm2_.push_back(cur);
}

// Consecutive pairs (n_i, n_{i+1}) with n_i CA3 and p the prime after P(n_i).
void RecordChecks::theorem34(const RecordView& cur) {
  if (!prev_ || prev_->label != ClassLabel::CA3) return;
  const RecordView& a = *prev_;
  const mpfr_prec_t bits = precision_.bits();
  const std::uint64_t p = a.next_prime;
  if (!enabled_.thm3 && p <= kLargeP) {
    log_.add(vacuous("4.1", pair(a, cur), "p <= 1e8"));
    return;
  }
  const std::string in = pair(a, cur) + " p=" + std::to_string(p) + " q=" + std::to_string(cur.step[0].p) +
                         (cur.step.size() > 1 ? " r=" + std::to_string(cur.step[1].p) : "");
  const ExtReal one = ExtReal::from_uint(1, bits);
  const ExtReal P = ExtReal::from_uint(p, bits);
  const ExtReal lp = colossal::log(P);
  const ExtReal three_p2_lp = mul_uint(square(P), 3) * lp;
  auto log_of = [&](std::uint64_t q) { return colossal::log(ExtReal::from_uint(q, bits)); };
  const bool single = cur.step.size() == 1;

  if (enabled_.thm3) {
    if (!single) {
      log_.add(vacuous("3.part1", in, "tie step"));
      log_.add(vacuous("3.1", in, "tie step"));
      bool big = true;
      ExtReal factor = one;
      for (const auto& m : cur.step) {
        big = big && m.p >= 23;
        factor = factor * (one - square(log_of(m.p)) / three_p2_lp);
      }
      if (big && cur.step.size() == 2) {
        log_.add(assert_relation("3.2", in, a.G, Relation::Less, cur.G * factor));
      } else {
        log_.add(vacuous("3.2", in, "needs a tie of two primes >= 23"));
      }
    } else {
      const std::uint64_t q = cur.step[0].p;
      const ExtReal lq = log_of(q);
      if (q >= 3) {
        log_.add(assert_relation("3.part1", in, a.G, Relation::Less, cur.G));
      } else {
        log_.add(vacuous("3.part1", in, "q = 2 is open"));
      }
      if (q >= 23) {
        log_.add(assert_relation("3.1", in, a.G, Relation::Less, cur.G * (one - square(lq) / three_p2_lp)));
      } else {
        log_.add(vacuous("3.1", in, "q < 23"));
      }
      log_.add(vacuous("3.2", in, "single-prime step"));
      // Form quoted in the introduction, log q / (3 p^2 (log p)^2).
      log_.add(assert_relation("3-intro", in, a.G, Relation::Less,
                               cur.G * (one - lq / (mul_uint(square(P), 3) * square(lp))), true));
    }
  }

  if (enabled_.thm4) {
    if (p <= kLargeP) {
      log_.add(vacuous("4.1", in, "p <= 1e8"));
    } else if (!single) {
      log_.add(vacuous("4.1", in, "tie step"));
    } else {
      const ExtReal lq = log_of(cur.step[0].p);
      const ExtReal bound = exp(constant("0.12646", bits) * lq / (P * square(lp) * lp));
      log_.add(assert_relation("4.1", in, cur.G, Relation::Less, a.G * bound));
    }
  }
}

void RecordChecks::chains(const RecordView& cur) {
  // A CA1 record above 5040 is below the last non-CA1 record.
  if (cur.label == ClassLabel::CA1 && cur.index >= kRobinFromIndex) {
    if (last_non_ca1_) {
      log_.add(assert_relation("C1", pair(cur, *last_non_ca1_), cur.G, Relation::Less, last_non_ca1_->G));
    } else {
      log_.add(vacuous("C1", idx(cur), "no earlier non-CA1 record"));
    }
  }
  if (cur.label != ClassLabel::CA1) last_non_ca1_ = cur;

  // Every CA3 record is below the next CA2 record.
  if (cur.label == ClassLabel::CA2) {
    for (const auto& r : pending_cor3_) log_.add(assert_relation("C3", pair(r, cur), r.G, Relation::Less, cur.G));
    pending_cor3_.clear();
  } else if (cur.label == ClassLabel::CA3) {
    pending_cor3_.push_back(cur);
  }
}

void RecordChecks::robin(const RecordView& cur) {
  if (cur.index < kRobinFromIndex) return;
  log_.add(assert_relation("RI", idx(cur), cur.G, Relation::Less, e_gamma_));
  if (!max_G_ || compare(cur.G, max_G_->G) == IntervalOrder::Greater) max_G_ = cur;
}

void RecordChecks::lemma7(const RecordView& cur) {
  const mpfr_prec_t bits = precision_.bits();
  if (enabled_.lemma7_chain) {
    if (cur.P < 2 || cur.P > table_->upto()) {
      log_.add(vacuous("L7.2-chain", idx(cur), "P outside the theta table"));
    } else {
      log_.add(assert_relation("L7.2-chain", idx(cur) + " P=" + std::to_string(cur.P), cur.log_n, Relation::LessEq,
                               table_->psi0(static_cast<double>(cur.P))));
    }
  }
  if (enabled_.lemma7_bound) {
    if (cur.P <= kLargeP) {
      log_.add(vacuous("L7.1", idx(cur), "P <= 1e8"));
    } else {
      const ExtReal P = ExtReal::from_uint(cur.P, bits);
      const ExtReal rhs = P * (ExtReal::from_uint(1, bits) + constant("0.06323", bits) / square(colossal::log(P)));
      log_.add(assert_relation("L7.1", idx(cur) + " P=" + std::to_string(cur.P), cur.log_n, Relation::Less, rhs));
    }
  }
}

namespace {

std::vector<CheckReport> run_checks(std::span<const CARecord> records, RecordChecks::Enabled enabled) {
  // one summary report per id
  RecordChecks checks(enabled);
  for (const auto& r : records) checks.observe(r);
  checks.finish();
  std::vector<CheckReport> out;
  for (const auto& id : checks.log().ids()) {
    const Tally& t = checks.log().tally(id);
    CheckReport summary;
    summary.id = id;
    summary.inputs = std::to_string(t.pass) + " pass, " + std::to_string(t.fail) + " fail, " +
                     std::to_string(t.vacuous) + " vacuous";
    summary.verdict = t.fail > 0 ? Verdict::Fail : (t.pass > 0 ? Verdict::Pass : Verdict::Vacuous);
    summary.margin = t.worst_margin;
    summary.informational = t.informational;
    out.push_back(std::move(summary));
  }
  return out;
}

RecordChecks::Enabled only(bool thm1, bool thm2, bool thm34, bool chains) {
  RecordChecks::Enabled e;
  e.thm1 = thm1;
  e.thm2 = thm2;
  e.thm3 = thm34;
  e.thm4 = thm34;
  e.chains = chains;
  e.robin = false;
  return e;
}

}  // namespace

std::vector<CheckReport> check_theorem1(std::span<const CARecord> records) {
  return run_checks(records, only(true, false, false, false));
}
std::vector<CheckReport> check_theorem2(std::span<const CARecord> records) {
  return run_checks(records, only(false, true, false, false));
}
std::vector<CheckReport> check_theorem34(std::span<const CARecord> records) {
  return run_checks(records, only(false, false, true, false));
}
std::vector<CheckReport> check_chains(std::span<const CARecord> records) {
  return run_checks(records, only(false, false, false, true));
}

}  // namespace colossal
