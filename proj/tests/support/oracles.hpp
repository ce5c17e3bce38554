#pragma once

// Test-only reference computations, kept independent of the library paths
// they are used to check.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "magrod/lie.hpp"

namespace oracles {

/// 4x4 matrix exponential by scaling-and-squaring a truncated Taylor series.
inline Eigen::Matrix4d seriesExp(const Eigen::Matrix4d& m, int terms = 20) {
  constexpr int squarings = 8;
  const Eigen::Matrix4d scaled = m / double(1 << squarings);
  Eigen::Matrix4d sum = Eigen::Matrix4d::Identity();
  Eigen::Matrix4d power = Eigen::Matrix4d::Identity();
  for (int k = 1; k <= terms; ++k) {
    power = (power * scaled / k).eval();
    sum += power;
  }
  for (int i = 0; i < squarings; ++i) sum = (sum * sum).eval();
  return sum;
}

/// Fixed-step RK4 on the matrix ODE T' = T * X(s) (body twist, right
/// multiplication).
template <class TwistFn>
Eigen::Matrix4d rk4BodyPose(TwistFn&& twist, Eigen::Matrix4d pose, double s0, double s1,
                            int steps) {
  const double h = (s1 - s0) / steps;
  double s = s0;
  for (int i = 0; i < steps; ++i) {
    const Eigen::Matrix4d k1 = pose * twist(s);
    const Eigen::Matrix4d k2 = (pose + 0.5 * h * k1) * twist(s + 0.5 * h);
    const Eigen::Matrix4d k3 = (pose + 0.5 * h * k2) * twist(s + 0.5 * h);
    const Eigen::Matrix4d k4 = (pose + h * k3) * twist(s + h);
    pose += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    s += h;
  }
  return pose;
}

/// Fixed-step RK4 on the dexp-inverse ODE Psi' = dexpinv_{-Psi}(X(s)),
/// Psi(0) = 0, whose exponential advances T' = T * X across [s0, s1].
template <class TwistFn>
Eigen::Matrix4d rk4DexpTwist(TwistFn&& twist, double s0, double s1, int steps,
                             int series_terms = 14) {
  auto rhs = [&](double s, const Eigen::Matrix4d& psi) {
    return magrod::dexpInvSeries(-psi, twist(s), series_terms);
  };
  Eigen::Matrix4d psi = Eigen::Matrix4d::Zero();
  const double h = (s1 - s0) / steps;
  double s = s0;
  for (int i = 0; i < steps; ++i) {
    const Eigen::Matrix4d k1 = rhs(s, psi);
    const Eigen::Matrix4d k2 = rhs(s + 0.5 * h, psi + 0.5 * h * k1);
    const Eigen::Matrix4d k3 = rhs(s + 0.5 * h, psi + 0.5 * h * k2);
    const Eigen::Matrix4d k4 = rhs(s + h, psi + h * k3);
    psi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    s += h;
  }
  return psi;
}

/// Least-squares slope of log(err) against log(h).
inline double logLogSlope(const std::vector<double>& h, const std::vector<double>& err) {
  const int n = static_cast<int>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline Eigen::Vector3d randomVec3(std::mt19937& rng, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  return Eigen::Vector3d(dist(rng), dist(rng), dist(rng));
}

inline magrod::Vector6d randomTwist(std::mt19937& rng, double angular_scale,
                                    double linear_scale) {
  return magrod::makeTwist(randomVec3(rng, angular_scale), randomVec3(rng, linear_scale));
}

/// Random se(3) matrix (general linear part, not the rod's e3).
inline Eigen::Matrix4d randomLieMatrix(std::mt19937& rng, double scale) {
  return magrod::hatSe3(randomTwist(rng, scale, scale));
}

/// Rotation angle between two rotation matrices, radians. Uses the
/// antisymmetric part for the sine so that near-identity angles resolve down
/// to machine precision (the plain acos-of-trace formula quantizes at
/// sqrt(eps) there).
inline double rotationAngle(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  const Eigen::Matrix3d m = a * b.transpose();
  const Eigen::Vector3d w(0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)),
                          0.5 * (m(1, 0) - m(0, 1)));
  const double cosine = std::clamp((m.trace() - 1.0) / 2.0, -1.0, 1.0);
  return std::atan2(std::min(w.norm(), 1.0), cosine);
}

}  // namespace oracles
