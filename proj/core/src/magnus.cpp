#include "magrod/magnus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/LU>

namespace magrod {

const char* magnusOrderName(MagnusOrder order) {
  return order == MagnusOrder::Fourth ? "fourth" : "sixth";
}

Eigen::VectorXd legendrePoints(int nu) {
  Eigen::VectorXd t(nu > 0 ? nu : 0);
  switch (nu) {
    case 2: {
      const double d = 1.0 / (2.0 * std::sqrt(3.0));
      t << 0.5 - d, 0.5 + d;
      return t;
    }
    case 3: {
      const double d = 0.5 * std::sqrt(3.0 / 5.0);
      t << 0.5 - d, 0.5, 0.5 + d;
      return t;
    }
    default:
      throw std::invalid_argument("legendrePoints: only nu = 2 or 3 supported");
  }
}

QuadratureRule makeQuadratureRule(int nu) {
  QuadratureRule rule;
  rule.nu = nu;
  rule.nodes = legendrePoints(nu);
  Eigen::MatrixXd vandermonde(nu, nu);
  for (int i = 0; i < nu; ++i) {
    double power = 1.0;
    for (int j = 0; j < nu; ++j) {
      vandermonde(i, j) = power;
      power *= rule.nodes(i) - 0.5;
    }
  }
  rule.vandermonde_inv = vandermonde.inverse();
  return rule;
}

std::vector<Eigen::Matrix4d> basisChange(std::span<const Eigen::Matrix4d> samples,
                                         const QuadratureRule& rule) {
  if (static_cast<int>(samples.size()) != rule.nu) {
    throw std::invalid_argument("basisChange: sample count does not match rule");
  }
  std::vector<Eigen::Matrix4d> y(rule.nu);
  for (int i = 0; i < rule.nu; ++i) {
    Eigen::Matrix4d acc = Eigen::Matrix4d::Zero();
    for (int j = 0; j < rule.nu; ++j) {
      acc += rule.vandermonde_inv(i, j) * samples[j];
    }
    y[i] = acc;
  }
  return y;
}

namespace {

const QuadratureRule& cachedRule(int nu) {
  static const QuadratureRule two = makeQuadratureRule(2);
  static const QuadratureRule three = makeQuadratureRule(3);
  return nu == 2 ? two : three;
}

}  // namespace

Eigen::Matrix4d magnusStep(std::span<const Eigen::Matrix4d> samples, MagnusOrder order) {
  const int nu = static_cast<int>(samples.size());
  if (nu != 2 && nu != 3) {
    throw std::invalid_argument("magnusStep: expected 2 or 3 samples");
  }
  if (nu < requiredQuadPoints(order)) {
    throw std::invalid_argument("magnusStep: too few samples for the requested order");
  }

  const auto y = basisChange(samples, cachedRule(nu));

  if (order == MagnusOrder::Fourth) {
    return y[0] + (1.0 / 12.0) * commutator(y[0], y[1]);
  }

  // Sixth order, body-twist convention. The commutator signs were fixed by
  // requiring O(h^7) local error against dense integration of the
  // dexp-inverse ODE; flipping any of them drops the observed order.
  const Eigen::Matrix4d c12 = commutator(y[0], y[1]);
  return y[0] + (1.0 / 12.0) * y[2]
       + (1.0 / 12.0) * c12
       - (1.0 / 240.0) * commutator(y[1], y[2])
       + (1.0 / 360.0) * commutator(y[0], commutator(y[0], y[2]))
       - (1.0 / 240.0) * commutator(y[1], c12)
       - (1.0 / 720.0) * commutator(y[0], commutator(y[0], c12));
}

double maxStep(double curvature_bound) {
  if (curvature_bound < 0.0) {
    throw std::invalid_argument("maxStep: curvature bound must be non-negative");
  }
  return std::numbers::pi / std::sqrt(6.0 * curvature_bound * curvature_bound + 1.0);
}

ConvergenceReport checkConvergenceBound(const CollocationGrid& grid, double curvature_bound) {
  ConvergenceReport report;
  report.curvature_bound = curvature_bound;
  report.max_step = maxStep(curvature_bound);
  const int segments = grid.numSegments();
  report.segment_widths.resize(segments);
  report.flagged.resize(segments);
  for (int i = 0; i < segments; ++i) {
    report.segment_widths(i) = grid.segment_edges(i + 1) - grid.segment_edges(i);
    report.flagged[i] = report.segment_widths(i) >= report.max_step;
    report.any_flagged = report.any_flagged || report.flagged[i];
  }
  return report;
}

}  // namespace magrod
