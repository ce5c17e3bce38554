#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "magrod/chebyshev.hpp"
#include "magrod/lie.hpp"

namespace magrod {

enum class MagnusOrder { Fourth, Sixth };

/// Minimum quadrature points per segment: 2 for the fourth-order rule,
/// 3 for the sixth-order rule.
constexpr int requiredQuadPoints(MagnusOrder order) {
  return order == MagnusOrder::Fourth ? 2 : 3;
}

const char* magnusOrderName(MagnusOrder order);

/// Gauss-Legendre abscissae shifted to [0,1], hard-coded closed forms for
/// nu in {2, 3}. Sorted ascending, symmetric about 1/2.
Eigen::VectorXd legendrePoints(int nu);

/// Quadrature nodes together with the inverse of the Vandermonde matrix
/// V_ij = (t_i - 1/2)^(j-1) used for the self-adjoint change of basis.
struct QuadratureRule {
  int nu = 0;
  Eigen::VectorXd nodes;
  Eigen::MatrixXd vandermonde_inv;
};

QuadratureRule makeQuadratureRule(int nu);

/// Change of basis Y_i = sum_j (V^-1)_ij X_j. The samples must already be
/// scaled by the segment width h.
std::vector<Eigen::Matrix4d> basisChange(std::span<const Eigen::Matrix4d> samples,
                                         const QuadratureRule& rule);

/// One Magnus step over a segment from nu h-scaled se(3) samples, for the
/// body-twist ODE T' = T*X: the pose update is T <- T * expSe3(result).
Eigen::Matrix4d magnusStep(std::span<const Eigen::Matrix4d> samples, MagnusOrder order);

/// Step bound pi / sqrt(6 beta^2 + 1) guaranteeing convergence of the
/// expansion when every curvature component is bounded by beta (1/m).
double maxStep(double curvature_bound);

/// Advisory per-segment check of the step bound. Solving may proceed with
/// flagged segments; the bound is sufficient, not necessary.
struct ConvergenceReport {
  double curvature_bound = 0.0;
  double max_step = 0.0;
  Eigen::VectorXd segment_widths;   // n+2 widths including [0,c0] and [cn,L]
  std::vector<bool> flagged;        // width >= max_step
  bool any_flagged = false;
};

ConvergenceReport checkConvergenceBound(const CollocationGrid& grid, double curvature_bound);

}  // namespace magrod
