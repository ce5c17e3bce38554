#include "magrod/rod.hpp"

#include <numbers>
#include <stdexcept>

#include <Eigen/Geometry>

namespace magrod {

RodProperties makeRod(double length, double radius, double youngs_modulus,
                      double poisson_ratio, const Pose& base_pose) {
  if (!(length > 0.0) || !(radius > 0.0) || !(youngs_modulus > 0.0)) {
    throw std::invalid_argument("makeRod: length, radius and modulus must be positive");
  }
  if (!(poisson_ratio > -1.0 && poisson_ratio < 0.5)) {
    throw std::invalid_argument("makeRod: Poisson ratio outside (-1, 0.5)");
  }
  const double area_moment = std::numbers::pi * radius * radius * radius * radius / 4.0;
  const double polar_moment = 2.0 * area_moment;
  const double shear_modulus = youngs_modulus / (2.0 * (1.0 + poisson_ratio));

  RodProperties props;
  props.length = length;
  props.radius = radius;
  props.stiffness = Eigen::Vector3d(youngs_modulus * area_moment,
                                    youngs_modulus * area_moment,
                                    shear_modulus * polar_moment);
  props.base_pose = base_pose;
  return props;
}

Eigen::Vector3d curvatureRhs(const Eigen::Vector3d& u, const Eigen::Matrix3d& R,
                             const RodProperties& props, const TipWrench& wrench) {
  const Eigen::Vector3d elastic = u.cross(props.stiffness.cwiseProduct(u));
  const Eigen::Vector3d loading = Eigen::Vector3d::UnitZ().cross(R.transpose() * wrench.force);
  return -props.stiffnessInverse().cwiseProduct(elastic + loading);
}

Eigen::Vector3d boundaryTarget(const Eigen::Matrix3d& tip_rotation,
                               const RodProperties& props, const TipWrench& wrench) {
  return props.stiffnessInverse().cwiseProduct(tip_rotation.transpose() * wrench.moment);
}

Eigen::Vector3d internalMoment(const Eigen::Vector3d& u, const Eigen::Matrix3d& R,
                               const RodProperties& props) {
  return R * props.stiffness.cwiseProduct(u);
}

}  // namespace magrod
