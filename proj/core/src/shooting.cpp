#include "magrod/shooting.hpp"

#include <chrono>
#include <limits>

#include <Eigen/Geometry>

#include "magrod/ode.hpp"

namespace magrod {

namespace {

// State layout: [qw qx qy qz, p(3), u(3)]. The quaternion tracks the body
// frame; it is normalized when converted, so orientation stays on SO(3)
// regardless of integrator drift.
Eigen::VectorXd packState(const Pose& pose, const Eigen::Vector3d& u) {
  const Eigen::Quaterniond q(pose.R);
  Eigen::VectorXd y(10);
  y << q.w(), q.x(), q.y(), q.z(), pose.p, u;
  return y;
}

Eigen::Quaterniond stateQuat(const Eigen::VectorXd& y) {
  return Eigen::Quaterniond(y(0), y(1), y(2), y(3)).normalized();
}

Pose statePose(const Eigen::VectorXd& y) {
  return Pose{stateQuat(y).toRotationMatrix(), y.segment<3>(4)};
}

}  // namespace

ShootingSolution solveShooting(const RodProperties& props, const TipWrench& wrench,
                               const SolverConfig& config,
                               const Eigen::Vector3d* initial_guess) {
  const auto start_time = std::chrono::steady_clock::now();

  OdeOptions ode_opts;
  ode_opts.abs_tol = 1e-10;
  ode_opts.rel_tol = 1e-10;
  ode_opts.initial_step = props.length / 50.0;

  auto rhs = [&](double, const Eigen::VectorXd& y) {
    const Eigen::Quaterniond q = stateQuat(y);
    const Eigen::Matrix3d R = q.toRotationMatrix();
    const Eigen::Vector3d u = y.segment<3>(7);
    const Eigen::Quaterniond dq = q * Eigen::Quaterniond(0.0, u.x(), u.y(), u.z());

    Eigen::VectorXd dy(10);
    dy << 0.5 * dq.w(), 0.5 * dq.x(), 0.5 * dq.y(), 0.5 * dq.z(),
        R.col(2),  // p' = R e3 for a unit-speed, shear-free rod
        curvatureRhs(u, R, props, wrench);
    return dy;
  };

  auto integrate = [&](const Eigen::Vector3d& u0, bool dense) {
    OdeOptions opts = ode_opts;
    opts.store_dense = dense;
    return integrateDp54(rhs, packState(props.base_pose, u0), 0.0, props.length, opts);
  };

  auto residual = [&](const Eigen::VectorXd& u0) -> Eigen::VectorXd {
    const OdeResult r = integrate(u0, false);
    if (!r.success) {
      return Eigen::VectorXd::Constant(3, std::numeric_limits<double>::quiet_NaN());
    }
    const Pose tip = statePose(r.y);
    const Eigen::Vector3d u_tip = r.y.segment<3>(7);
    return u_tip - boundaryTarget(tip.R, props, wrench);
  };

  const Eigen::Vector3d guess = initial_guess ? *initial_guess : Eigen::Vector3d::Zero();
  const LevenbergResult lm = solveLevenbergMarquardt(residual, guess, config);

  ShootingSolution sol;
  sol.base_curvature = lm.x;
  sol.iterations = lm.iterations;
  sol.residual_norm_inf = lm.residual_norm_inf;
  sol.converged = lm.converged;

  const OdeResult dense = integrate(lm.x, true);
  sol.arc = dense.t;
  sol.poses.reserve(dense.states.size());
  sol.curvatures.reserve(dense.states.size());
  for (const auto& y : dense.states) {
    sol.poses.push_back(statePose(y));
    sol.curvatures.push_back(y.segment<3>(7));
  }
  if (!sol.poses.empty()) {
    sol.tip_pose = sol.poses.back();
    sol.tip_curvature = sol.curvatures.back();
  }

  sol.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count();
  return sol;
}

}  // namespace magrod
