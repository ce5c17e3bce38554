#include "magrod/lie.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/LU>

namespace magrod {

namespace {

// Bernoulli numbers B_0..B_19 with the B1 = -1/2 convention.
constexpr double kBernoulli[20] = {
    1.0,
    -1.0 / 2.0,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
};

}  // namespace

Eigen::Matrix4d Pose::matrix() const {
  Eigen::Matrix4d T = Eigen::Matrix4d::Identity();
  T.topLeftCorner<3, 3>() = R;
  T.topRightCorner<3, 1>() = p;
  return T;
}

Pose Pose::inverse() const { return Pose{R.transpose(), -(R.transpose() * p)}; }

Pose Pose::operator*(const Pose& other) const {
  return Pose{R * other.R, R * other.p + p};
}

bool Pose::isRigid(double tol) const {
  const double ortho = (R.transpose() * R - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  return ortho <= tol && std::abs(R.determinant() - 1.0) <= tol && p.allFinite();
}

Vector6d makeTwist(const Eigen::Vector3d& angular, const Eigen::Vector3d& linear) {
  Vector6d xi;
  xi << angular, linear;
  return xi;
}

Eigen::Matrix3d hat(const Eigen::Vector3d& u) {
  Eigen::Matrix3d S;
  // clang-format off
  S <<    0.0, -u.z(),  u.y(),
        u.z(),    0.0, -u.x(),
       -u.y(),  u.x(),    0.0;
  // clang-format on
  return S;
}

Eigen::Vector3d vee(const Eigen::Matrix3d& S) {
  return Eigen::Vector3d(S(2, 1), S(0, 2), S(1, 0));
}

Eigen::Matrix4d hatSe3(const Vector6d& xi) {
  Eigen::Matrix4d X = Eigen::Matrix4d::Zero();
  X.topLeftCorner<3, 3>() = hat(Eigen::Vector3d(xi.head<3>()));
  X.topRightCorner<3, 1>() = xi.tail<3>();
  return X;
}

Vector6d veeSe3(const Eigen::Matrix4d& X) {
  Vector6d xi;
  xi.head<3>() = vee(Eigen::Matrix3d(X.topLeftCorner<3, 3>()));
  xi.tail<3>() = X.topRightCorner<3, 1>();
  return xi;
}

Matrix6d ad(const Vector6d& xi) {
  Matrix6d A = Matrix6d::Zero();
  const Eigen::Matrix3d W = hat(Eigen::Vector3d(xi.head<3>()));
  A.topLeftCorner<3, 3>() = W;
  A.bottomLeftCorner<3, 3>() = hat(Eigen::Vector3d(xi.tail<3>()));
  A.bottomRightCorner<3, 3>() = W;
  return A;
}

Eigen::Matrix4d commutator(const Eigen::Matrix4d& a, const Eigen::Matrix4d& b) {
  return a * b - b * a;
}

Pose expSe3(const Vector6d& xi) {
  const Eigen::Vector3d w = xi.head<3>();
  const Eigen::Vector3d v = xi.tail<3>();
  const Eigen::Matrix3d W = hat(w);
  const Eigen::Matrix3d W2 = W * W;
  const double theta2 = w.squaredNorm();

  // Coefficients of R = I + a*W + b*W^2 and p = (I + b*W + c*W^2) v.
  double a, b, c;
  if (theta2 < 1e-16) {
    a = 1.0 - theta2 / 6.0 + theta2 * theta2 / 120.0;
    b = 0.5 - theta2 / 24.0 + theta2 * theta2 / 720.0;
    c = 1.0 / 6.0 - theta2 / 120.0 + theta2 * theta2 / 5040.0;
  } else {
    const double theta = std::sqrt(theta2);
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
    c = (theta - std::sin(theta)) / (theta2 * theta);
  }

  Pose T;
  T.R = Eigen::Matrix3d::Identity() + a * W + b * W2;
  T.p = v + b * (W * v) + c * (W2 * v);
  return T;
}

Eigen::Matrix4d dexpInvSeries(const Eigen::Matrix4d& psi, const Eigen::Matrix4d& x, int terms) {
  if (terms < 1 || terms > 20) {
    throw std::invalid_argument("dexpInvSeries: terms must be in [1, 20]");
  }
  Eigen::Matrix4d sum = x;  // B_0 = 1
  Eigen::Matrix4d iterated = x;
  double factorial = 1.0;
  for (int i = 1; i < terms; ++i) {
    iterated = commutator(psi, iterated);
    factorial *= i;
    if (kBernoulli[i] != 0.0) {
      sum += (kBernoulli[i] / factorial) * iterated;
    }
  }
  return sum;
}

}  // namespace magrod
