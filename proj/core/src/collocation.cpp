#include "magrod/collocation.hpp"

#include <array>
#include <chrono>
#include <stdexcept>

namespace magrod {

namespace {

// se(3) sample h*X(s) for rod curvature u: [[hat(u), e3], [0,0]] scaled by h.
Eigen::Matrix4d scaledRodTwist(const Eigen::Vector3d& u, double h) {
  Eigen::Matrix4d X = Eigen::Matrix4d::Zero();
  X(0, 1) = -u.z() * h;
  X(0, 2) = u.y() * h;
  X(1, 0) = u.z() * h;
  X(1, 2) = -u.x() * h;
  X(2, 0) = -u.y() * h;
  X(2, 1) = u.x() * h;
  X(2, 3) = h;
  return X;
}

}  // namespace

PoseReconstruction reconstructPoses(const CollocationGrid& grid, const Eigen::MatrixXd& curvatures,
                                    const RodProperties& props, MagnusOrder order) {
  const int nu = grid.quad_per_segment;
  if (nu < requiredQuadPoints(order)) {
    throw std::invalid_argument("reconstructPoses: grid has too few quadrature points per segment");
  }
  const Eigen::MatrixXd quad_curvatures = valuesAtQuadrature(grid, curvatures);

  PoseReconstruction recon;
  const int segments = grid.numSegments();
  recon.poses.reserve(segments);
  recon.segment_twists.reserve(segments);

  Pose running = props.base_pose;
  std::array<Eigen::Matrix4d, 3> samples;
  for (int seg = 0; seg < segments; ++seg) {
    const double width = grid.segment_edges(seg + 1) - grid.segment_edges(seg);
    for (int k = 0; k < nu; ++k) {
      samples[k] = scaledRodTwist(quad_curvatures.row(seg * nu + k), width);
    }
    const Vector6d twist =
        veeSe3(magnusStep(std::span<const Eigen::Matrix4d>(samples.data(), nu), order));
    running = running * expSe3(twist);
    recon.poses.push_back(running);
    recon.segment_twists.push_back(twist);
  }
  return recon;
}

Eigen::MatrixXd assembleResidual(const CollocationGrid& grid, const Eigen::MatrixXd& curvatures,
                                 const RodProperties& props, const TipWrench& wrench,
                                 MagnusOrder order) {
  if (curvatures.rows() != grid.order + 1 || curvatures.cols() != 3) {
    throw std::invalid_argument("assembleResidual: expected (n+1)x3 collocation values");
  }
  const int n = grid.order;
  const PoseReconstruction recon = reconstructPoses(grid, curvatures, props, order);

  Eigen::MatrixXd residual(n + 1, 3);
  residual.topRows(n) = grid.diff_reduced * curvatures;
  for (int i = 0; i < n; ++i) {
    residual.row(i) -=
        curvatureRhs(curvatures.row(i), recon.poses[i].R, props, wrench).transpose();
  }
  residual.row(n) = valueAtTip(grid, curvatures).transpose() -
                    boundaryTarget(recon.poses[n + 1].R, props, wrench).transpose();
  return residual;
}

RodSolution solveCollocation(const RodProperties& props, const TipWrench& wrench,
                             const CollocationGrid& grid, MagnusOrder order,
                             const SolverConfig& config, const Eigen::MatrixXd* initial_guess) {
  const auto start_time = std::chrono::steady_clock::now();
  const int n = grid.order;
  const Eigen::Index dof = 3 * (n + 1);

  if (initial_guess &&
      (initial_guess->rows() != n + 1 || initial_guess->cols() != 3)) {
    throw std::invalid_argument("solveCollocation: initial guess must be (n+1)x3");
  }

  auto residual = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    const Eigen::Map<const Eigen::MatrixXd> curvatures(x.data(), n + 1, 3);
    const Eigen::MatrixXd e = assembleResidual(grid, curvatures, props, wrench, order);
    return Eigen::Map<const Eigen::VectorXd>(e.data(), dof);
  };

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(dof);
  if (initial_guess) {
    x0 = Eigen::Map<const Eigen::VectorXd>(initial_guess->data(), dof);
  }

  const LevenbergResult lm = solveLevenbergMarquardt(residual, x0, config);

  RodSolution sol;
  sol.grid = grid;
  sol.magnus_order = order;
  sol.base_pose = props.base_pose;
  sol.curvatures = Eigen::Map<const Eigen::MatrixXd>(lm.x.data(), n + 1, 3);
  sol.iterations = lm.iterations;
  sol.residual_norm_inf = lm.residual_norm_inf;
  sol.converged = lm.converged;

  PoseReconstruction recon = reconstructPoses(grid, sol.curvatures, props, order);
  sol.poses = std::move(recon.poses);
  sol.segment_twists = std::move(recon.segment_twists);

  sol.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return sol;
}

std::pair<Pose, Eigen::Vector3d> evaluateSolution(const RodSolution& solution, double s) {
  const CollocationGrid& grid = solution.grid;
  if (!(s >= 0.0 && s <= grid.length)) {
    throw std::invalid_argument("evaluateSolution: arc length outside [0, L]");
  }

  const Eigen::Vector3d u = (interpolationRow(grid, s) * solution.curvatures).transpose();

  if (s == 0.0) return {solution.base_pose, u};
  if (s == grid.length) return {solution.poses.back(), u};

  // Nearest collocation node at or below s; bit-identical pose on a hit.
  int node = -1;  // -1: base frame
  for (int i = 0; i <= grid.order; ++i) {
    if (grid.points(i) == s) return {solution.poses[i], u};
    if (grid.points(i) < s) node = i;
  }

  const Pose& start = node < 0 ? solution.base_pose : solution.poses[node];
  const double lower = node < 0 ? 0.0 : grid.points(node);
  const double width = s - lower;

  const int nu = grid.quad_per_segment;
  const Eigen::VectorXd t = legendrePoints(nu);
  std::array<Eigen::Matrix4d, 3> samples;
  for (int k = 0; k < nu; ++k) {
    const Eigen::Vector3d uk =
        (interpolationRow(grid, lower + t(k) * width) * solution.curvatures).transpose();
    samples[k] = Eigen::Matrix4d::Zero();
    samples[k].topLeftCorner<3, 3>() = hat(uk) * width;
    samples[k](2, 3) = width;
  }
  const Eigen::Matrix4d psi =
      magnusStep(std::span<const Eigen::Matrix4d>(samples.data(), nu), solution.magnus_order);
  return {start * expSe3(veeSe3(psi)), u};
}

}  // namespace magrod
