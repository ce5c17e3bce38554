#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "magrod/chebyshev.hpp"
#include "magrod/levenberg.hpp"
#include "magrod/lie.hpp"
#include "magrod/magnus.hpp"
#include "magrod/rod.hpp"

namespace magrod {

/// Pose chain produced by Magnus stepping through every grid segment.
/// poses[i] is the frame at c_i for i <= n; poses[n+1] is the tip frame.
struct PoseReconstruction {
  std::vector<Pose> poses;
  std::vector<Vector6d> segment_twists;  // n+2 Magnus results, (angular; linear)
};

/// Converged (or best-effort) collocation solution.
struct RodSolution {
  CollocationGrid grid;
  MagnusOrder magnus_order = MagnusOrder::Fourth;
  Pose base_pose;

  Eigen::MatrixXd curvatures;            // (n+1)x3 collocation curvature values
  std::vector<Vector6d> segment_twists;  // n+2
  std::vector<Pose> poses;               // frames at c_0..c_n and L

  int iterations = 0;
  double residual_norm_inf = 0.0;
  double wall_time_s = 0.0;
  bool converged = false;

  const Pose& tipPose() const { return poses.back(); }
};

/// Steps the base frame through all n+2 segments, one Magnus step each, with
/// curvature at the quadrature points taken from the grid interpolant.
PoseReconstruction reconstructPoses(const CollocationGrid& grid, const Eigen::MatrixXd& curvatures,
                                    const RodProperties& props, MagnusOrder order);

/// Collocation residual, (n+1)x3: rows 0..n-1 are the spectral derivative
/// minus the curvature ODE right-hand side at c_0..c_{n-1}; the last row is
/// the interpolated tip curvature minus the moment boundary target.
Eigen::MatrixXd assembleResidual(const CollocationGrid& grid, const Eigen::MatrixXd& curvatures,
                                 const RodProperties& props, const TipWrench& wrench,
                                 MagnusOrder order);

/// Levenberg-Marquardt on the column-major vectorization of the collocation
/// values. Starts from the straight configuration unless a guess is given.
/// Non-convergence is reported through the flag with the best iterate kept.
RodSolution solveCollocation(const RodProperties& props, const TipWrench& wrench,
                             const CollocationGrid& grid, MagnusOrder order,
                             const SolverConfig& config,
                             const Eigen::MatrixXd* initial_guess = nullptr);

/// Pose and curvature at any arc length in [0, L]. Exactly the stored pose
/// at the collocation points and the tip; a partial Magnus step from the
/// nearest lower node elsewhere. Throws std::invalid_argument out of range.
std::pair<Pose, Eigen::Vector3d> evaluateSolution(const RodSolution& solution, double s);

}  // namespace magrod
