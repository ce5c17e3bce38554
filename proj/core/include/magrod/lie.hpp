#pragma once

#include <Eigen/Core>

namespace magrod {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

/// Rigid transform on SE(3): rotation R and translation p.
struct Pose {
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  Eigen::Vector3d p = Eigen::Vector3d::Zero();

  Eigen::Matrix4d matrix() const;
  Pose inverse() const;
  Pose operator*(const Pose& other) const;

  /// True when R is orthonormal with det +1, both within tol.
  bool isRigid(double tol = 1e-10) const;

  static Pose Identity() { return Pose{}; }
};

/// Twists are stored (angular; linear). For the rod kinematic twist the
/// linear part is exactly e3 = [0,0,1].
Vector6d makeTwist(const Eigen::Vector3d& angular, const Eigen::Vector3d& linear);

/// Skew-symmetric matrix of a 3-vector: hat(u) * w == u.cross(w).
Eigen::Matrix3d hat(const Eigen::Vector3d& u);
Eigen::Vector3d vee(const Eigen::Matrix3d& S);

/// se(3) matrix of a twist: [[hat(angular), linear], [0, 0]].
Eigen::Matrix4d hatSe3(const Vector6d& xi);
Vector6d veeSe3(const Eigen::Matrix4d& X);

/// 6x6 adjoint of an se(3) element: [[hat(w), 0], [hat(v), hat(w)]].
Matrix6d ad(const Vector6d& xi);

/// Matrix commutator [a, b] = a*b - b*a. Closed on se(3).
Eigen::Matrix4d commutator(const Eigen::Matrix4d& a, const Eigen::Matrix4d& b);

/// Exponential map se(3) -> SE(3), closed form with a series fallback for
/// rotation angles below 1e-8.
Pose expSe3(const Vector6d& xi);

/// Truncated series for dexpinv_psi(x) = sum_i B_i/i! ad_psi^i(x) with the
/// Bernoulli numbers B_i (B1 = -1/2). Used as an integration oracle, not on
/// hot paths. Throws std::invalid_argument unless 1 <= terms <= 20.
Eigen::Matrix4d dexpInvSeries(const Eigen::Matrix4d& psi, const Eigen::Matrix4d& x, int terms);

}  // namespace magrod
