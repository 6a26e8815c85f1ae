#include "colossal/accumulator.hpp"

#include <cstdlib>

#include "colossal/errors.hpp"

namespace colossal {

CompensatedAccumulator::CompensatedAccumulator(mpfr_prec_t bits) : sum_(bits), comp_(bits) {}

CompensatedAccumulator::CompensatedAccumulator(const CompensatedAccumulator& other) = default;
CompensatedAccumulator::CompensatedAccumulator(CompensatedAccumulator&& other) noexcept = default;
CompensatedAccumulator& CompensatedAccumulator::operator=(const CompensatedAccumulator& other) = default;
CompensatedAccumulator& CompensatedAccumulator::operator=(CompensatedAccumulator&& other) noexcept = default;

void CompensatedAccumulator::add(const ExtReal& term) {
  const mpfr_prec_t bits = precision();
  ExtReal t = term.precision() == bits ? term : term.rounded_to(bits);
  radius_ = add_up(radius_, t.radius());

  // TwoSum: s = a + b, e = (a - (s - bb)) + (b - bb) with bb = s - a, exact under RN.
  mpfr_t s, bb, x, y;
  mpfr_inits2(bits, s, bb, x, y, static_cast<mpfr_ptr>(nullptr));
  mpfr_add(s, sum_.get(), t.get(), MPFR_RNDN);
  mpfr_sub(bb, s, sum_.get(), MPFR_RNDN);
  mpfr_sub(x, s, bb, MPFR_RNDN);
  mpfr_sub(x, sum_.get(), x, MPFR_RNDN);
  mpfr_sub(y, t.get(), bb, MPFR_RNDN);
  mpfr_add(x, x, y, MPFR_RNDN);
  mpfr_swap(sum_.get(), s);
  if (mpfr_add(comp_.get(), comp_.get(), x, MPFR_RNDN) != 0) {
    radius_ = add_up(radius_, ulp_bound(comp_.get()));
  }
  mpfr_clears(s, bb, x, y, static_cast<mpfr_ptr>(nullptr));
}

ExtReal CompensatedAccumulator::value() const {
  ExtReal r = sum_ + comp_;
  r.widen(radius_);
  return r;
}

CompensatedAccumulator CompensatedAccumulator::restore(const std::string& sum, const std::string& radius,
                                                       const std::string& compensation, mpfr_prec_t bits) {
  CompensatedAccumulator acc(bits);
  acc.sum_ = ExtReal::parse(sum, "0", bits);
  acc.comp_ = ExtReal::parse(compensation, "0", bits);
  char* end = nullptr;
  acc.radius_ = std::strtod(radius.c_str(), &end);
  if (end == radius.c_str() || *end != '\0' || !(acc.radius_ >= 0.0)) {
    throw Error(ErrorKind::CorruptCheckpoint, "bad accumulator radius '" + radius + "'");
  }
  return acc;
}

bool CompensatedAccumulator::same_bits(const CompensatedAccumulator& other) const {
  return sum_.same_bits(other.sum_) && comp_.same_bits(other.comp_) && radius_ == other.radius_;
}

}  // namespace colossal
