#pragma once

#include <Eigen/Core>

#include "magrod/lie.hpp"

namespace magrod {

/// Geometry and stiffness of a uniform, inextensible, shear-free rod.
/// stiffness holds the diagonal of K = diag(EI, EI, JG) in N m^2.
struct RodProperties {
  double length = 0.0;  // m
  double radius = 0.0;  // m
  Eigen::Vector3d stiffness = Eigen::Vector3d::Zero();
  Pose base_pose;

  Eigen::Vector3d stiffnessInverse() const { return stiffness.cwiseInverse(); }
};

/// Circular solid rod from material constants: I = pi r^4 / 4, J = 2I,
/// G = E / (2 (1 + poisson)). Throws std::invalid_argument on non-positive
/// length, radius or modulus.
RodProperties makeRod(double length, double radius, double youngs_modulus,
                      double poisson_ratio, const Pose& base_pose = Pose::Identity());

/// Tip load, both parts expressed in world frame.
struct TipWrench {
  Eigen::Vector3d force = Eigen::Vector3d::Zero();    // N
  Eigen::Vector3d moment = Eigen::Vector3d::Zero();   // N m
};

/// Curvature derivative u' = -K^-1 (hat(u) K u + hat(e3) R^T f), 1/m^2.
Eigen::Vector3d curvatureRhs(const Eigen::Vector3d& u, const Eigen::Matrix3d& R,
                             const RodProperties& props, const TipWrench& wrench);

/// Curvature the solution must attain at the tip: K^-1 R^T(L) m.
Eigen::Vector3d boundaryTarget(const Eigen::Matrix3d& tip_rotation,
                               const RodProperties& props, const TipWrench& wrench);

/// Internal moment in world frame: R K u.
Eigen::Vector3d internalMoment(const Eigen::Vector3d& u, const Eigen::Matrix3d& R,
                               const RodProperties& props);

}  // namespace magrod
