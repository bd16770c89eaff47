#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "dualtaylor/numio.hpp"

namespace dualtaylor {

// Constraint pair for window fits: every nonzero term of an admissible
// polynomial has its power in [low, high].
struct DegreeWindow {
  int low = 0;
  int high = 0;

  DegreeWindow() = default;
  DegreeWindow(int low_, int high_);  // validates 0 <= low <= high

  int size() const { return high - low + 1; }
};

// A complex polynomial stored against an explicit expansion center:
//   p(z) = sum_k coeffs[k] * (z - center)^k.
// Values are immutable after construction; every operation returns a new
// polynomial. The empty coefficient list is the zero polynomial.
//
// Degree queries ignore coefficients of modulus <= trim threshold
// (kTrimRel * max coefficient modulus), so deg/deg^- stay stable under
// scaling. The zero polynomial reports -1 for both queries.
class CenteredPolynomial {
 public:
  static constexpr double kTrimRel = 1e-14;

  CenteredPolynomial() = default;
  CenteredPolynomial(ComplexScalar center, std::vector<ComplexScalar> coeffs);

  static CenteredPolynomial zero(ComplexScalar center = {});
  static CenteredPolynomial constant(ComplexScalar value,
                                     ComplexScalar center = {});

  const ComplexScalar& center() const { return center_; }
  const std::vector<ComplexScalar>& coeffs() const { return coeffs_; }
  // Coefficient of (z-center)^k; zero beyond storage.
  ComplexScalar coeff(int k) const;
  int storage_size() const { return static_cast<int>(coeffs_.size()); }

  // Horner evaluation from the highest stored coefficient down.
  ComplexScalar evaluate(ComplexScalar z) const;
  std::vector<ComplexScalar> evaluate_on(
      const std::vector<ComplexScalar>& pts) const;

  // Same function expanded around new_center, computed by repeated
  // synthetic division (Taylor shift). Degree-preserving.
  CenteredPolynomial recentered(ComplexScalar new_center) const;

  // Taylor partial sum S_N at the polynomial's own center: coefficients
  // 0..N retained. For N >= stored degree this is a coefficient-identical
  // copy.
  CenteredPolynomial partial_sum(int n) const;

  double trim_threshold() const;
  int degree() const { return degree(trim_threshold()); }
  int low_degree() const { return low_degree(trim_threshold()); }
  int degree(double trim) const;
  int low_degree(double trim) const;
  bool is_zero() const { return degree() < 0; }

  double max_coeff_modulus() const;

 private:
  ComplexScalar center_{};
  std::vector<ComplexScalar> coeffs_{};
};

// q is recentered onto p's center first; the sum keeps p's center.
CenteredPolynomial add(const CenteredPolynomial& p, const CenteredPolynomial& q);
CenteredPolynomial scale(const CenteredPolynomial& p, ComplexScalar factor);

// Coefficient file format: a `center re im` header, then one `k re im`
// line per stored nonzero coefficient, all values shortest-round-trip.
void write_coefficients(std::ostream& os, const CenteredPolynomial& p);
// Reads the block written by write_coefficients, consuming the stream to
// EOF or, when `stop_at_end` is set, to a line equal to "end" (consumed).
CenteredPolynomial read_coefficients(std::istream& is, bool stop_at_end = false);

}  // namespace dualtaylor
