#include "magrod/levenberg.hpp"

#include <cmath>

#include <Eigen/Cholesky>

namespace magrod {

Eigen::MatrixXd forwardDifferenceJacobian(const ResidualFn& fn, const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& r0, double relative_step) {
  Eigen::MatrixXd jac(r0.size(), x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double h = relative_step * std::max(1.0, std::abs(x(j)));
    probe(j) = x(j) + h;
    jac.col(j) = (fn(probe) - r0) / h;
    probe(j) = x(j);
  }
  return jac;
}

LevenbergResult solveLevenbergMarquardt(const ResidualFn& fn, const Eigen::VectorXd& x0,
                                        const SolverConfig& config) {
  constexpr double kDampingMax = 1e14;
  constexpr double kDampingMin = 1e-14;

  LevenbergResult result;
  result.x = x0;
  result.residual = fn(x0);
  result.residual_norm_inf = result.residual.lpNorm<Eigen::Infinity>();
  if (result.residual_norm_inf < config.residual_tolerance) {
    result.converged = true;
    return result;
  }

  double damping = config.lm_damping_init;
  double cost = result.residual.squaredNorm();

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    const Eigen::MatrixXd jac = forwardDifferenceJacobian(
        fn, result.x, result.residual, config.finite_difference_step);
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd gradient = jac.transpose() * result.residual;
    Eigen::VectorXd diag = normal.diagonal().cwiseMax(1e-12);

    bool accepted = false;
    while (damping <= kDampingMax) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal() += damping * diag;
      const Eigen::VectorXd step = damped.ldlt().solve(-gradient);
      if (step.allFinite()) {
        const Eigen::VectorXd x_try = result.x + step;
        const Eigen::VectorXd r_try = fn(x_try);
        const double cost_try = r_try.squaredNorm();
        if (std::isfinite(cost_try) && cost_try < cost) {
          result.x = x_try;
          result.residual = r_try;
          cost = cost_try;
          damping = std::max(damping / config.lm_damping_decrease, kDampingMin);
          accepted = true;
          break;
        }
      }
      damping *= config.lm_damping_increase;
    }

    result.iterations = iter;
    result.residual_norm_inf = result.residual.lpNorm<Eigen::Infinity>();
    if (result.residual_norm_inf < config.residual_tolerance) {
      result.converged = true;
      return result;
    }
    if (!accepted) {
      return result;  // damping exhausted, best iterate kept
    }
  }
  return result;
}

}  // namespace magrod
