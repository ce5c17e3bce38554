#pragma once

#include <functional>

#include <Eigen/Core>

namespace magrod {

/// Shared configuration for the collocation and shooting solvers.
struct SolverConfig {
  double residual_tolerance = 1e-9;      // on the max-norm of the residual
  int max_iterations = 200;
  double finite_difference_step = 1e-7;  // relative forward-difference step
  double lm_damping_init = 1e-3;
  double lm_damping_increase = 10.0;
  double lm_damping_decrease = 10.0;
};

struct LevenbergResult {
  Eigen::VectorXd x;
  Eigen::VectorXd residual;
  double residual_norm_inf = 0.0;
  int iterations = 0;
  bool converged = false;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Forward-difference Jacobian of fn about x, reusing the residual r0 = fn(x).
Eigen::MatrixXd forwardDifferenceJacobian(const ResidualFn& fn, const Eigen::VectorXd& x,
                                          const Eigen::VectorXd& r0, double relative_step);

/// Damped Gauss-Newton (Levenberg-Marquardt) on a square or overdetermined
/// residual. Terminates when the residual max-norm drops below
/// config.residual_tolerance; on failure returns the best iterate found.
LevenbergResult solveLevenbergMarquardt(const ResidualFn& fn, const Eigen::VectorXd& x0,
                                        const SolverConfig& config);

}  // namespace magrod
