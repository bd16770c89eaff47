#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dualtaylor/errors.hpp"
#include "dualtaylor/minimax.hpp"
#include "task_pool.hpp"

namespace dualtaylor {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Self-contained dense primal-dual interior-point solver for
//   max b^T x  s.t.  A x = rhs,  x >= 0,
// in Mehrotra predictor-corrector form on the m x m normal equations
// (m stays small here; n is the big dimension). The dual vector y of the
// equality constraints is what the oracle extracts. Smooth path following
// has no bases and no degeneracy to cycle on, and the duality gap at
// termination certifies the answer.
class DenseInteriorPoint {
 public:
  DenseInteriorPoint(Eigen::MatrixXd a, Eigen::VectorXd rhs,
                     Eigen::VectorXd objective)
      : a_(std::move(a)),
        rhs_(std::move(rhs)),
        b_(std::move(objective)),
        m_(a_.rows()),
        n_(a_.cols()) {}

  void solve() {
    const double b_scale = 1.0 + b_.cwiseAbs().maxCoeff();
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n_);
    Eigen::VectorXd s(n_);
    for (Eigen::Index i = 0; i < n_; ++i) {
      s(i) = std::max(1.0, std::abs(b_(i)));
    }
    y_ = Eigen::VectorXd::Zero(m_);

    // The merit ties the three optimality measures together; the best
    // iterate is kept because the normal equations degrade once the
    // complementarity products reach roundoff and later iterates can
    // wander.
    double best_merit = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_y = y_;
    double best_primal = 0, best_dual = 0;

    const int max_iters = 60;
    for (int iter = 0; iter < max_iters; ++iter) {
      iterations_ = iter + 1;
      const Eigen::VectorXd r_p = rhs_ - a_ * x;
      const Eigen::VectorXd r_d = b_ - a_.transpose() * y_ + s;
      const double mu = x.dot(s) / static_cast<double>(n_);
      const double gap_scale = 1.0 + std::abs(b_.dot(x));
      const double merit = std::max(
          {r_p.cwiseAbs().maxCoeff() / (1.0 + rhs_.cwiseAbs().maxCoeff()),
           r_d.cwiseAbs().maxCoeff() / b_scale,
           mu * static_cast<double>(n_) / gap_scale});
      if (merit < best_merit) {
        best_merit = merit;
        best_y = y_;
        best_primal = b_.dot(x);
        best_dual = rhs_.dot(y_);
      }
      if (best_merit <= 1e-9) break;

      const Eigen::VectorXd d = x.cwiseQuotient(s);
      Eigen::MatrixXd normal = a_ * d.asDiagonal() * a_.transpose();
      // Tiny static shift: d collapses along the central path and the
      // late normal equations would otherwise go numerically singular.
      normal.diagonal().array() += 1e-13 * (1.0 + normal.trace() / m_);
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
      if (ldlt.info() != Eigen::Success) {
        throw InternalError("lp_oracle: normal equations not factorizable");
      }

      auto solve_direction = [&](const Eigen::VectorXd& r_c,
                                 Eigen::VectorXd* dx, Eigen::VectorXd* dy,
                                 Eigen::VectorXd* ds) {
        const Eigen::VectorXd rc_over_s = r_c.cwiseQuotient(s);
        *dy = ldlt.solve(a_ * (rc_over_s + d.cwiseProduct(r_d)) - r_p);
        *ds = a_.transpose() * *dy - r_d;
        *dx = rc_over_s - d.cwiseProduct(*ds);
      };
      auto max_step = [](const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
        double alpha = 1.0;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
          if (dv(i) < 0) alpha = std::min(alpha, -v(i) / dv(i));
        }
        return alpha;
      };

      // Predictor.
      Eigen::VectorXd dx_aff, dy_aff, ds_aff;
      solve_direction(-x.cwiseProduct(s), &dx_aff, &dy_aff, &ds_aff);
      const double alpha_p_aff = max_step(x, dx_aff);
      const double alpha_d_aff = max_step(s, ds_aff);
      const double mu_aff = (x + alpha_p_aff * dx_aff)
                                .dot(s + alpha_d_aff * ds_aff) /
                            static_cast<double>(n_);
      const double ratio = mu_aff / std::max(mu, 1e-300);
      const double sigma = std::clamp(ratio * ratio * ratio, 0.0, 1.0);

      // Corrector.
      const Eigen::VectorXd r_c = Eigen::VectorXd::Constant(n_, sigma * mu) -
                                  x.cwiseProduct(s) -
                                  dx_aff.cwiseProduct(ds_aff);
      Eigen::VectorXd dx, dy, ds;
      solve_direction(r_c, &dx, &dy, &ds);
      const double alpha_p = 0.995 * max_step(x, dx);
      const double alpha_d = 0.995 * max_step(s, ds);
      x += alpha_p * dx;
      y_ += alpha_d * dy;
      s += alpha_d * ds;
    }
    if (best_merit > 1e-6) {
      throw InternalError(
          "lp_oracle: interior-point merit stalled at " +
          std::to_string(best_merit));
    }
    y_ = best_y;
    objective_ = best_primal;
    dual_objective_ = best_dual;
    converged_ = true;
  }

  const Eigen::VectorXd& dual() const { return y_; }
  double objective() const { return objective_; }
  double dual_objective() const { return dual_objective_; }
  bool converged() const { return converged_; }
  int iterations() const { return iterations_; }

 private:
  Eigen::MatrixXd a_;
  Eigen::VectorXd rhs_;
  Eigen::VectorXd b_;
  Eigen::Index m_ = 0;
  Eigen::Index n_ = 0;
  Eigen::VectorXd y_;
  double objective_ = 0;
  double dual_objective_ = 0;
  bool converged_ = false;
  int iterations_ = 0;
};

}  // namespace

ApproximationResult lp_oracle(const FitTask& task, int facets) {
  if (facets < 3 || facets > 360) {
    throw ValidationError("lp_oracle.facets: need 3..360");
  }
  const detail::PooledTask pooled = detail::pool_and_validate(task);
  const int kdim = task.window.size();
  const Eigen::Index n = static_cast<Eigen::Index>(pooled.points.size());
  if (kdim > 40) {
    throw ValidationError("lp_oracle: window size " + std::to_string(kdim) +
                          " exceeds the small-instance cap of 40");
  }
  if (n > 2000) {
    throw ValidationError("lp_oracle: " + std::to_string(n) +
                          " points exceed the small-instance cap of 2000");
  }

  // Scaled monomial basis (independent of the production solver's route).
  Eigen::MatrixXcd v(n, kdim);
  for (Eigen::Index i = 0; i < n; ++i) {
    const ComplexScalar t =
        (pooled.points[static_cast<std::size_t>(i)] - task.center) /
        pooled.scale;
    ComplexScalar power = detail::cpow_int(t, task.window.low);
    for (int j = 0; j < kdim; ++j) {
      v(i, j) = power;
      power *= t;
    }
  }

  // Primal: min t over (u, t) with, for every point i and facet angle
  // phi_j, sec(pi/F) * Re(e^{-i phi_j}(y_i - (V u)_i)) <= t. The inscribed
  // polygon makes |r_i| <= t at the optimum and t* <= sec(pi/F) * d.
  // The interior-point solver runs on the standard-form dual
  //   max b^T lambda  s.t.  sum lambda_ij (q_ij; 1) = (0; 1), lambda >= 0,
  // whose equality-constraint dual vector is exactly (Re u, Im u, t).
  const double sec = 1.0 / std::cos(kPi / facets);
  const Eigen::Index rows = 2 * static_cast<Eigen::Index>(kdim) + 1;
  const Eigen::Index cols = n * facets;
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd cost(cols);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int j = 0; j < facets; ++j) {
      const double phi = 2 * kPi * j / facets;
      const ComplexScalar rot(std::cos(phi), -std::sin(phi));  // e^{-i phi}
      const Eigen::Index col = i * facets + j;
      for (int k = 0; k < kdim; ++k) {
        const ComplexScalar w = rot * v(i, k);
        a(k, col) = sec * w.real();
        a(kdim + k, col) = -sec * w.imag();
      }
      a(rows - 1, col) = 1.0;
      cost(col) = sec * (rot * pooled.targets(i)).real();
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
  rhs(rows - 1) = 1.0;

  DenseInteriorPoint solver(std::move(a), std::move(rhs), std::move(cost));
  solver.solve();
  const Eigen::VectorXd& y = solver.dual();

  Eigen::VectorXcd window_coeffs(kdim);
  for (int k = 0; k < kdim; ++k) {
    window_coeffs(k) = ComplexScalar(y(k), y(kdim + k));
  }

  ApproximationResult result;
  result.polynomial = detail::window_polynomial(
      window_coeffs, task.window, task.center, pooled.scale,
      &result.coefficients_reliable);

  // Residuals recomputed from the returned polynomial.
  Eigen::VectorXcd residual(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    residual(i) = pooled.targets(i) -
                  result.polynomial.evaluate(
                      pooled.points[static_cast<std::size_t>(i)]);
  }
  result.grid_errors =
      detail::per_grid_errors(pooled, residual, task.grids.size());
  result.objective = 0;
  for (double e : result.grid_errors) {
    result.objective = std::max(result.objective, e);
  }
  result.iterations = solver.iterations();
  result.converged = solver.converged();
  return result;
}

}  // namespace dualtaylor
