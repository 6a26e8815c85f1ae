#include <algorithm>
#include <cmath>

#include "colossal/bounds.hpp"

namespace colossal {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Vacuous: return "vacuous";
  }
  return "?";
}

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::LessEq: return "<=";
    case Relation::Greater: return ">";
    case Relation::GreaterEq: return ">=";
  }
  return "?";
}

CheckReport assert_relation(std::string id, std::string inputs, const ExtReal& lhs, Relation rel, const ExtReal& rhs,
                            bool informational) {
  CheckReport r{std::move(id), std::move(inputs), lhs, rhs, rel, Verdict::Fail,
                std::numeric_limits<double>::quiet_NaN(), informational, {}};
  const IntervalOrder o = compare(lhs, rhs);
  bool ok = false;
  switch (rel) {
    case Relation::Less: ok = o == IntervalOrder::Less; break;
    case Relation::LessEq: ok = o != IntervalOrder::Greater; break;
    case Relation::Greater: ok = o == IntervalOrder::Greater; break;
    case Relation::GreaterEq: ok = o != IntervalOrder::Less; break;
  }
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  if (ok && o == IntervalOrder::Overlap) r.note = "equality boundary";

  const bool upward = rel == Relation::Less || rel == Relation::LessEq;
  const double diff = (upward ? rhs - lhs : lhs - rhs).approx();
  const double scale = std::fabs(rhs.approx());
  r.margin = scale > 0.0 ? diff / scale : diff;
  return r;
}

CheckReport vacuous(std::string id, std::string inputs, std::string reason) {
  CheckReport r;
  r.id = std::move(id);
  r.inputs = std::move(inputs);
  r.verdict = Verdict::Vacuous;
  r.note = std::move(reason);
  return r;
}

void Tally::add(const CheckReport& r) {
  informational = informational || r.informational;
  switch (r.verdict) {
    case Verdict::Pass: ++pass; break;
    case Verdict::Fail:
      ++fail;
      if (failures.size() < kKeptFailures) failures.push_back(r);
      break;
    case Verdict::Vacuous:
      ++vacuous;
      if (vacuous_reasons.size() < 8 &&
          std::find(vacuous_reasons.begin(), vacuous_reasons.end(), r.note) == vacuous_reasons.end()) {
        vacuous_reasons.push_back(r.note);
      }
      return;
  }
  if (!std::isnan(r.margin) && r.margin < worst_margin) {
    worst_margin = r.margin;
    worst_inputs = r.inputs;
  }
}

void CheckLog::add(const CheckReport& r) {
  auto it = by_id_.find(r.id);
  if (it == by_id_.end()) {
    order_.push_back(r.id);
    it = by_id_.emplace(r.id, Tally{}).first;
  }
  it->second.add(r);
}

void CheckLog::add(std::span<const CheckReport> rs) {
  for (const auto& r : rs) add(r);
}

void CheckLog::merge(const CheckLog& other) {
  for (const auto& id : other.order_) {
    const Tally& t = other.by_id_.at(id);
    auto it = by_id_.find(id);
    if (it == by_id_.end()) {
      order_.push_back(id);
      by_id_.emplace(id, t);
      continue;
    }
    Tally& mine = it->second;
    mine.pass += t.pass;
    mine.fail += t.fail;
    mine.vacuous += t.vacuous;
    mine.informational = mine.informational || t.informational;
    if (t.worst_margin < mine.worst_margin) {
      mine.worst_margin = t.worst_margin;
      mine.worst_inputs = t.worst_inputs;
    }
    for (const auto& f : t.failures) {
      if (mine.failures.size() < Tally::kKeptFailures) mine.failures.push_back(f);
    }
    for (const auto& v : t.vacuous_reasons) {
      if (mine.vacuous_reasons.size() < 8 &&
          std::find(mine.vacuous_reasons.begin(), mine.vacuous_reasons.end(), v) == mine.vacuous_reasons.end()) {
        mine.vacuous_reasons.push_back(v);
      }
    }
  }
}

std::uint64_t CheckLog::failures() const {
  std::uint64_t n = 0;
  for (const auto& [id, t] : by_id_) {
    if (!t.informational) n += t.fail;
  }
  return n;
}

std::uint64_t CheckLog::passes() const {
  std::uint64_t n = 0;
  for (const auto& [id, t] : by_id_) n += t.pass;
  return n;
}

std::uint64_t CheckLog::vacuous_count() const {
  std::uint64_t n = 0;
  for (const auto& [id, t] : by_id_) n += t.vacuous;
  return n;
}

}  // namespace colossal
