#pragma once

#include <string>

#include "colossal/ext_real.hpp"

namespace colossal {

// Running sum of ExtReal terms. Each addition is split into the rounded sum
// and its exact rounding error (TwoSum); the errors are collected in a
// separate compensation term, so the only unaccounted loss is the rounding of
// the compensation itself, which is tracked in the radius.
class CompensatedAccumulator {
 public:
  explicit CompensatedAccumulator(mpfr_prec_t bits);
  CompensatedAccumulator(const CompensatedAccumulator& other);
  CompensatedAccumulator(CompensatedAccumulator&& other) noexcept;
  CompensatedAccumulator& operator=(const CompensatedAccumulator& other);
  CompensatedAccumulator& operator=(CompensatedAccumulator&& other) noexcept;
  ~CompensatedAccumulator() = default;

  void add(const ExtReal& term);

  /// sum + compensation, as an ExtReal.
  ExtReal value() const;

  const ExtReal& sum() const { return sum_; }
  const ExtReal& compensation() const { return comp_; }
  double radius() const { return radius_; }
  mpfr_prec_t precision() const { return sum_.precision(); }

  /// Exact state restore (checkpoint resume).
  static CompensatedAccumulator restore(const std::string& sum, const std::string& radius,
                                        const std::string& compensation, mpfr_prec_t bits);

  bool same_bits(const CompensatedAccumulator& other) const;

 private:
  ExtReal sum_;
  ExtReal comp_;
  double radius_ = 0.0;
};

}  // namespace colossal
