#pragma once

#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "dualtaylor/polynomial.hpp"

namespace dualtaylor {

// Evaluable target rules. Rational targets require the denominator to stay
// bounded away from zero (modulus >= 1e-8) on every grid they are
// evaluated on. A pointwise table binds to a fixed grid size and cannot be
// re-evaluated on refined grids, so it is rejected where re-verification
// is required.
struct RationalRule {
  CenteredPolynomial numerator;
  CenteredPolynomial denominator;
};

struct TableRule {
  std::vector<ComplexScalar> values;
};

class TargetFunction {
 public:
  static constexpr double kDenominatorFloor = 1e-8;

  TargetFunction() : rule_(CenteredPolynomial{}) {}
  explicit TargetFunction(CenteredPolynomial p) : rule_(std::move(p)) {}
  TargetFunction(CenteredPolynomial num, CenteredPolynomial den)
      : rule_(RationalRule{std::move(num), std::move(den)}) {}
  explicit TargetFunction(std::vector<ComplexScalar> table)
      : rule_(TableRule{std::move(table)}) {}

  static TargetFunction zero() { return TargetFunction(CenteredPolynomial{}); }
  static TargetFunction constant(ComplexScalar v) {
    return TargetFunction(CenteredPolynomial::constant(v));
  }

  bool is_table() const { return std::holds_alternative<TableRule>(rule_); }
  bool is_rational() const {
    return std::holds_alternative<RationalRule>(rule_);
  }
  bool is_polynomial() const {
    return std::holds_alternative<CenteredPolynomial>(rule_);
  }
  const CenteredPolynomial* polynomial() const {
    return std::get_if<CenteredPolynomial>(&rule_);
  }
  const RationalRule* rational() const {
    return std::get_if<RationalRule>(&rule_);
  }

  // Throws ValidationError for a table size mismatch or a denominator
  // falling under the floor at some grid point.
  std::vector<ComplexScalar> evaluate(
      const std::vector<ComplexScalar>& pts) const;

  // Single-point evaluation; invalid for tables.
  ComplexScalar evaluate(ComplexScalar z) const;

 private:
  std::variant<CenteredPolynomial, RationalRule, TableRule> rule_;
};

// The accuracy contract of a construction: epsilon for the g-approximation
// on L and 1/s for both partial-sum targets.
struct Tolerances {
  double epsilon = 0;
  long long s = 0;

  Tolerances() = default;
  Tolerances(double epsilon_, long long s_);  // validates epsilon > 0, s >= 1
};

// Target serialization used inside certificate files (polynomial and
// rational rules only).
void write_target(std::ostream& os, const TargetFunction& t);
TargetFunction read_target(std::istream& is);

}  // namespace dualtaylor
