#pragma once

// Internal helpers shared by the window solver and the LP oracle.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dualtaylor/errors.hpp"
#include "dualtaylor/minimax.hpp"

namespace dualtaylor::detail {

struct PooledTask {
  std::vector<ComplexScalar> points;
  Eigen::VectorXcd targets;
  std::vector<std::size_t> grid_offsets;  // grid g covers [offsets[g], offsets[g+1])
  double scale = 1;                       // max |z - center|
};

PooledTask pool_and_validate(const FitTask& task);

// Integer power by binary exponentiation; exact zero base stays zero.
inline ComplexScalar cpow_int(ComplexScalar base, int k) {
  ComplexScalar acc{1.0, 0.0};
  ComplexScalar sq = base;
  for (unsigned e = static_cast<unsigned>(k); e > 0; e >>= 1) {
    if (e & 1u) acc *= sq;
    if (e > 1) sq *= sq;
  }
  return acc;
}

std::vector<double> per_grid_errors(const PooledTask& pooled,
                                    const Eigen::VectorXcd& residual,
                                    std::size_t num_grids);

// Rescales window coordinates t^k back to (z-center)^k coefficients and
// pads the structural zeros below the window. Sets *reliable to false and
// zeroes everything when the image is not finite.
CenteredPolynomial window_polynomial(const Eigen::VectorXcd& window_coeffs,
                                     const DegreeWindow& window,
                                     ComplexScalar center, double scale,
                                     bool* reliable);

}  // namespace dualtaylor::detail
