#pragma once

#include <complex>
#include <random>
#include <vector>

#include "dualtaylor/polynomial.hpp"

namespace testutil {

using dualtaylor::CenteredPolynomial;
using dualtaylor::ComplexScalar;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline ComplexScalar random_complex(std::mt19937_64& rng, double radius) {
  return {uniform(rng, -radius, radius), uniform(rng, -radius, radius)};
}

inline CenteredPolynomial random_polynomial(std::mt19937_64& rng, int degree,
                                            double coeff_radius,
                                            ComplexScalar center = {}) {
  std::vector<ComplexScalar> coeffs(static_cast<std::size_t>(degree) + 1);
  for (auto& c : coeffs) c = random_complex(rng, coeff_radius);
  return CenteredPolynomial(center, std::move(coeffs));
}

// Coefficients decaying like decay^-k: recentering within |delta| < decay
// stays well conditioned, which is what identity-style assertions need.
inline CenteredPolynomial random_decaying_polynomial(std::mt19937_64& rng,
                                                     int degree, double decay,
                                                     ComplexScalar center = {}) {
  std::vector<ComplexScalar> coeffs(static_cast<std::size_t>(degree) + 1);
  double mag = 1.0;
  for (auto& c : coeffs) {
    c = random_complex(rng, mag);
    mag /= decay;
  }
  return CenteredPolynomial(center, std::move(coeffs));
}

}  // namespace testutil
