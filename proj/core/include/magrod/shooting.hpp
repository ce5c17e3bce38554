#pragma once

#include <vector>

#include <Eigen/Core>

#include "magrod/levenberg.hpp"
#include "magrod/lie.hpp"
#include "magrod/rod.hpp"

namespace magrod {

/// Dense boundary-value solution found by shooting on the base curvature.
struct ShootingSolution {
  Eigen::Vector3d base_curvature = Eigen::Vector3d::Zero();  // converged u(0)
  std::vector<double> arc;                  // accepted integrator abscissae
  std::vector<Pose> poses;                  // frames at arc
  std::vector<Eigen::Vector3d> curvatures;  // u at arc

  Pose tip_pose;
  Eigen::Vector3d tip_curvature = Eigen::Vector3d::Zero();

  int iterations = 0;
  double residual_norm_inf = 0.0;
  double wall_time_s = 0.0;
  bool converged = false;
};

/// Solves the rod boundary value problem by root-finding on u(0): forward
/// integration with an adaptive Dormand-Prince scheme (tolerances 1e-10) and
/// Levenberg-Marquardt on the tip curvature mismatch. Non-convergence is
/// reported through the flag, with the best iterate retained.
ShootingSolution solveShooting(const RodProperties& props, const TipWrench& wrench,
                               const SolverConfig& config,
                               const Eigen::Vector3d* initial_guess = nullptr);

}  // namespace magrod
