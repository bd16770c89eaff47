#include "dualtaylor/targets.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "dualtaylor/errors.hpp"

namespace dualtaylor {

std::vector<ComplexScalar> TargetFunction::evaluate(
    const std::vector<ComplexScalar>& pts) const {
  if (const auto* t = std::get_if<TableRule>(&rule_)) {
    if (t->values.size() != pts.size()) {
      throw ValidationError(
          "target table: size " + std::to_string(t->values.size()) +
          " does not match grid size " + std::to_string(pts.size()));
    }
    return t->values;
  }
  std::vector<ComplexScalar> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = evaluate(pts[i]);
  return out;
}

ComplexScalar TargetFunction::evaluate(ComplexScalar z) const {
  if (const auto* p = std::get_if<CenteredPolynomial>(&rule_)) {
    return p->evaluate(z);
  }
  if (const auto* r = std::get_if<RationalRule>(&rule_)) {
    const ComplexScalar den = r->denominator.evaluate(z);
    if (std::abs(den) < kDenominatorFloor) {
      throw ValidationError("rational target: denominator modulus " +
                            format_double(std::abs(den)) +
                            " under floor at grid point " + format_complex(z));
    }
    return r->numerator.evaluate(z) / den;
  }
  throw ValidationError("target table: cannot evaluate at a free point");
}

Tolerances::Tolerances(double epsilon_, long long s_)
    : epsilon(epsilon_), s(s_) {
  if (!is_finite(epsilon) || epsilon <= 0) {
    throw ValidationError("tolerances.epsilon: must be > 0");
  }
  if (s < 1) throw ValidationError("tolerances.s: must be >= 1");
}

void write_target(std::ostream& os, const TargetFunction& t) {
  if (const auto* p = t.polynomial()) {
    os << "polynomial\n";
    write_coefficients(os, *p);
    os << "end\n";
    return;
  }
  if (const auto* r = t.rational()) {
    os << "rational\n";
    write_coefficients(os, r->numerator);
    os << "end\n";
    write_coefficients(os, r->denominator);
    os << "end\n";
    return;
  }
  throw ValidationError("target table: not serializable");
}

TargetFunction read_target(std::istream& is) {
  std::string kind;
  if (!std::getline(is, kind)) throw ParseError("target: unexpected EOF");
  if (kind == "polynomial") {
    return TargetFunction(read_coefficients(is, /*stop_at_end=*/true));
  }
  if (kind == "rational") {
    CenteredPolynomial num = read_coefficients(is, /*stop_at_end=*/true);
    CenteredPolynomial den = read_coefficients(is, /*stop_at_end=*/true);
    return TargetFunction(std::move(num), std::move(den));
  }
  throw ParseError("target: unknown kind '" + kind + "'");
}

}  // namespace dualtaylor
