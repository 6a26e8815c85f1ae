#include "colossal/generator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "colossal/checkpoint.hpp"
#include "colossal/errors.hpp"

namespace colossal {

namespace {

constexpr std::uint64_t kRobinFromIndex = 9;  // n_8 = 5040

std::string describe(const CriticalStep& step) {
  std::string s;
  for (const auto& m : step.members) {
    s += (s.empty() ? "" : ";") + std::to_string(m.at.p) + "^" + std::to_string(m.at.k);
  }
  return s;
}

std::optional<ClassLabel> decide(const ExtReal& log_n, std::uint64_t P, std::uint64_t next) {
  switch (compare(log_n, P)) {
    case IntervalOrder::Less: return ClassLabel::CA1;
    case IntervalOrder::Overlap: return std::nullopt;
    case IntervalOrder::Greater: break;
  }
  switch (compare(log_n, next)) {
    case IntervalOrder::Less: return ClassLabel::CA2;
    case IntervalOrder::Greater: return ClassLabel::CA3;
    case IntervalOrder::Overlap: break;
  }
  return std::nullopt;
}

ClassLabel classify_with(const CAState& state, const ExtReal& log_n, std::uint64_t next, const PrimeSieve& sieve) {
  if (auto label = decide(log_n, state.P(), next)) return *label;
  const FreshSums fresh = recompute_fresh(state, sieve, Precision{kMaxDigits});
  if (auto label = decide(fresh.log_n, state.P(), next)) return *label;
  throw Error(ErrorKind::UnresolvedClass, "log n = " + fresh.log_n.to_string(40) + " within error of P = " +
                                              std::to_string(state.P()) + " or " + std::to_string(next));
}

std::string radius_text(double r) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", r);
  return buf;
}

AccumulatorImage image(const CompensatedAccumulator& acc) {
  return {acc.sum().value_string(), radius_text(acc.radius()), acc.compensation().value_string()};
}

CompensatedAccumulator restore(const AccumulatorImage& img, mpfr_prec_t bits) {
  try {
    return CompensatedAccumulator::restore(img.value, img.radius, img.compensation, bits);
  } catch (const Error& e) {
    throw Error(ErrorKind::CorruptCheckpoint, e.what());
  }
}

std::vector<std::uint64_t> boundary_primes(const Checkpoint& cp) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < cp.boundaries.size(); ++i) {
    const auto& [k, p] = cp.boundaries[i];
    if (k != static_cast<int>(i) + 1 || p < 2 || (i > 0 && p > out.back())) {
      throw Error(ErrorKind::CorruptCheckpoint, "boundary list is not (1..K, non-increasing primes)");
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace

const char* to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::CA1: return "CA1";
    case ClassLabel::CA2: return "CA2";
    case ClassLabel::CA3: return "CA3";
  }
  return "?";
}

CAState::CAState(mpfr_prec_t bits) : log_n(bits), log_rho(bits) {}

int CAState::exponent(std::uint64_t p) const {
  // boundaries is non-increasing
  const auto it = std::partition_point(boundaries.begin(), boundaries.end(), [p](std::uint64_t b) { return b >= p; });
  return static_cast<int>(it - boundaries.begin());
}

void apply_step(CAState& state, const CriticalStep& step) {
  if (step.members.empty()) throw Error(ErrorKind::StreamOrderViolation, "empty step");
  for (const auto& m : step.members) {
    const int have = state.exponent(m.at.p);
    if (m.at.k < 1 || have != m.at.k - 1) {
      throw Error(ErrorKind::StreamOrderViolation, "step " + describe(step) + " at index " +
                                                       std::to_string(state.index + 1) + ": exponent of " +
                                                       std::to_string(m.at.p) + " is " + std::to_string(have));
    }
  }
  for (const auto& m : step.members) {
    const auto level = static_cast<std::size_t>(m.at.k - 1);
    if (level == state.boundaries.size()) {
      state.boundaries.push_back(m.at.p);
    } else {
      state.boundaries[level] = m.at.p;
    }
    state.log_n.add(m.log_p);
    state.log_rho.add(m.log_gain);
  }
  for (std::size_t i = 1; i < state.boundaries.size(); ++i) {
    if (state.boundaries[i] > state.boundaries[i - 1]) {
      throw Error(ErrorKind::StreamOrderViolation, "boundaries increase after step " + describe(step));
    }
  }
  ++state.index;
}

ExtReal compute_G(const CAState& state) {
  if (state.index == 0) throw Error(ErrorKind::InvalidArgument, "G is undefined for n = 1");
  return exp(state.log_rho.value()) / log(state.log_n.value());
}

FreshSums recompute_fresh(const CAState& state, const PrimeSieve& sieve, Precision precision) {
  const mpfr_prec_t bits = precision.bits();
  const double u = std::ldexp(1.0, -static_cast<int>(bits));
  CompensatedAccumulator log_n(bits), log_rho(bits);
  if (state.boundaries.empty()) return {log_n.value(), log_rho.value()};

  ExtReal term(bits);
  mpfr_t y;
  mpfr_init2(y, bits);
  std::size_t a = state.boundaries.size();
  for (const std::uint32_t p : sieve.primes_up_to(state.P())) {
    while (a > 0 && state.boundaries[a - 1] < p) --a;
    // a log p
    mpfr_log_ui(term.get(), p, MPFR_RNDN);
    const double log_err = ulp_bound(term.get());
    const int t = mpfr_mul_ui(term.get(), term.get(), static_cast<unsigned long>(a), MPFR_RNDN);
    term.set_radius(add_up(log_err * static_cast<double>(a) * (1.0 + 0x1p-50), t != 0 ? ulp_bound(term.get()) : 0.0));
    log_n.add(term);
    // log(1 + 1/p + ... + 1/p^a) = log1p((1 - p^-a) / (p - 1))
    mpfr_ui_pow_ui(y, p, static_cast<unsigned long>(a), MPFR_RNDN);
    mpfr_ui_div(y, 1, y, MPFR_RNDN);
    mpfr_ui_sub(y, 1, y, MPFR_RNDN);
    mpfr_div_ui(y, y, p - 1, MPFR_RNDN);
    mpfr_log1p(term.get(), y, MPFR_RNDN);
    term.set_radius(mul_up(std::fabs(mpfr_get_d(term.get(), MPFR_RNDA)), 8.0 * u));
    log_rho.add(term);
  }
  mpfr_clear(y);
  return {log_n.value(), log_rho.value()};
}

ClassLabel classify(const CAState& state, const PrimeSieve& sieve) {
  if (state.index == 0) throw Error(ErrorKind::InvalidArgument, "n = 1 has no class");
  return classify_with(state, state.log_n.value(), sieve.next_prime(state.P()), sieve);
}

// ---------------------------------------------------------------- generator

CAGenerator::CAGenerator(const PrimeSieve& sieve, std::uint64_t pmax, GeneratorOptions options)
    : sieve_(&sieve),
      options_(options),
      state_(options.precision.bits()),
      stream_(sieve, pmax, options.precision) {
  summary_.pmax = pmax;
}

CAGenerator::CAGenerator(const PrimeSieve& sieve, std::uint64_t pmax, const Checkpoint& cp, GeneratorOptions options)
    : sieve_(&sieve),
      options_([&] {
        options.precision = Precision{cp.precision_digits};
        return options;
      }()),
      state_(options_.precision.bits()),
      stream_(sieve, pmax, options_.precision, boundary_primes(cp), cp.step_index) {
  if (cp.format_version != kCheckpointVersion) throw Error(ErrorKind::CorruptCheckpoint, "unsupported checkpoint version");
  state_.index = cp.step_index;
  state_.boundaries = boundary_primes(cp);
  if (!state_.boundaries.empty() && state_.P() > pmax) {
    throw Error(ErrorKind::InvalidArgument, "pmax is below the checkpoint's largest prime");
  }
  if ((state_.index == 0) != state_.boundaries.empty()) throw Error(ErrorKind::CorruptCheckpoint, "step_index and boundaries disagree");
  const mpfr_prec_t bits = options_.precision.bits();
  state_.log_n = restore(cp.log_n, bits);
  state_.log_rho = restore(cp.log_rho, bits);
  if (cp.ca1 + cp.ca2 + cp.ca3 != cp.step_index) throw Error(ErrorKind::CorruptCheckpoint, "class counts do not sum to step_index");

  summary_.pmax = pmax;
  summary_.total = cp.step_index;
  summary_.ca1 = cp.ca1;
  summary_.ca2 = cp.ca2;
  summary_.ca3 = cp.ca3;
  char* end = nullptr;
  summary_.max_G = std::strtod(cp.max_G.c_str(), &end);
  if (end == cp.max_G.c_str() || *end != '\0') throw Error(ErrorKind::CorruptCheckpoint, "bad max_G");
  summary_.max_G_index = cp.max_G_index;
  summary_.max_level = cp.max_level;
  summary_.escalations = cp.escalations;
  summary_.ties = cp.ties;
}

std::optional<CARecord> CAGenerator::next() {
  auto step = stream_.next();
  if (!step) return std::nullopt;
  apply_step(state_, *step);

  CARecord rec;
  rec.index = state_.index;
  for (const auto& m : step->members) rec.step.push_back(m.at);
  rec.P = state_.P();
  rec.next_prime = sieve_->next_prime(rec.P);
  rec.eps = std::move(step->eps);
  rec.log_n = state_.log_n.value();
  rec.log_rho = state_.log_rho.value();
  rec.G = compute_G(state_);
  rec.label = classify_with(state_, rec.log_n, rec.next_prime, *sieve_);

  ++summary_.total;
  switch (rec.label) {
    case ClassLabel::CA1: ++summary_.ca1; break;
    case ClassLabel::CA2: ++summary_.ca2; break;
    case ClassLabel::CA3: ++summary_.ca3; break;
  }
  summary_.max_level = std::max(summary_.max_level, static_cast<int>(state_.boundaries.size()));
  if (rec.index >= kRobinFromIndex) {
    const double g = rec.G.approx();
    if (summary_.max_G_index == 0 || g > summary_.max_G) {
      summary_.max_G = g;
      summary_.max_G_index = rec.index;
    }
  }
  if (options_.audit_every != 0 && rec.index % options_.audit_every == 0) audit();
  return rec;
}

void CAGenerator::audit() {
  const FreshSums fresh = recompute_fresh(state_, *sieve_, options_.precision);
  const ExtReal ln = state_.log_n.value();
  const ExtReal lr = state_.log_rho.value();
  if (compare(fresh.log_n, ln) != IntervalOrder::Overlap || compare(fresh.log_rho, lr) != IntervalOrder::Overlap) {
    throw Error(ErrorKind::Internal, "accumulator audit failed at index " + std::to_string(state_.index) +
                                         ": log n " + ln.to_string(30) + " vs " + fresh.log_n.to_string(30));
  }
  const double dn = std::fabs((fresh.log_n - ln).approx()) / std::fabs(ln.approx());
  const double dr = std::fabs((fresh.log_rho - lr).approx()) / std::fabs(lr.approx());
  summary_.max_audit_drift = std::max({summary_.max_audit_drift, dn, dr});
  ++summary_.audits;
}

Summary CAGenerator::summary() const {
  Summary s = summary_;
  s.escalations += stream_.escalations();
  s.ties += stream_.ties();
  return s;
}

Checkpoint CAGenerator::checkpoint() const {
  const Summary s = summary();
  Checkpoint cp;
  cp.pmax = s.pmax;
  cp.step_index = state_.index;
  cp.precision_digits = options_.precision.digits;
  for (std::size_t i = 0; i < state_.boundaries.size(); ++i) {
    cp.boundaries.emplace_back(static_cast<int>(i) + 1, state_.boundaries[i]);
  }
  cp.log_n = image(state_.log_n);
  cp.log_rho = image(state_.log_rho);
  cp.ca1 = s.ca1;
  cp.ca2 = s.ca2;
  cp.ca3 = s.ca3;
  cp.max_G = radius_text(s.max_G);
  cp.max_G_index = s.max_G_index;
  cp.max_level = s.max_level;
  cp.escalations = s.escalations;
  cp.ties = s.ties;
  return cp;
}

Summary generate(std::uint64_t pmax, const std::function<void(const CARecord&)>& sink, GeneratorOptions options) {
  const auto start = std::chrono::steady_clock::now();
  if (pmax < 2) throw Error(ErrorKind::InvalidArgument, "pmax must be >= 2");
  const PrimeSieve sieve(pmax + kSieveMargin);
  CAGenerator gen(sieve, pmax, options);
  while (auto rec = gen.next()) sink(*rec);
  Summary s = gen.summary();
  s.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

}  // namespace colossal
