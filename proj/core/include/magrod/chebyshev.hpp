#pragma once

#include <Eigen/Core>

namespace magrod {

/// Chebyshev collocation grid on [0, L] with every linear operator the
/// solver needs precomputed at construction.
///
/// Collocation points are the zeros of the degree-(n+1) Chebyshev polynomial
/// of the first kind mapped to [0, L], stored in ascending order. Quadrature
/// points subdivide the n+2 segments [0,c0], [c_i,c_{i+1}], [c_n,L] at
/// shifted Legendre zeros, nu per segment, m = nu*(n+2) total.
struct CollocationGrid {
  int order = 0;                  // polynomial order n
  double length = 0.0;            // L, meters
  int quad_per_segment = 0;       // nu, 2 or 3

  Eigen::VectorXd points;         // (n+1) collocation arc lengths, ascending
  Eigen::VectorXd segment_edges;  // (n+3): 0, c_0..c_n, L
  Eigen::VectorXd quad_points;    // (m) arc lengths, ascending

  Eigen::MatrixXd diff;           // (n+1)x(n+1) differentiation matrix, 1/m
  Eigen::MatrixXd diff_reduced;   // n x (n+1), diff with its last row removed

  Eigen::MatrixXd quad_eval;      // m x (n+1), modal coeffs -> values at quad_points
  Eigen::MatrixXd modal;          // (n+1)x(n+1), collocation values -> modal coeffs
  Eigen::MatrixXd quad_interp;    // m x (n+1), quad_eval * modal (precomputed)
  Eigen::RowVectorXd tip_row;     // 1 x (n+1), collocation values -> value at s = L

  int numQuadPoints() const { return static_cast<int>(quad_points.size()); }
  int numSegments() const { return order + 2; }
};

/// T_k evaluated at x(s) = (2s - L)/L via the three-term recurrence.
/// Throws std::invalid_argument for s outside [0, L] or k < 0.
double chebyshevEval(int degree, double s, double length);

/// Builds the full grid. Throws std::invalid_argument unless order >= 1,
/// length > 0 and quad_per_segment is 2 or 3.
CollocationGrid makeGrid(int order, double length, int quad_per_segment);

/// Row vector r such that r * values gives the interpolant at arc length s,
/// for values sampled at grid.points.
Eigen::RowVectorXd interpolationRow(const CollocationGrid& grid, double s);

/// Spectral derivative of values sampled at grid.points. Exact for
/// polynomials of degree <= n.
Eigen::VectorXd differentiate(const CollocationGrid& grid, const Eigen::VectorXd& values);

/// Interpolates each column of the (n+1)x3 collocation-value matrix to all
/// quadrature points, returning m x 3.
Eigen::MatrixXd valuesAtQuadrature(const CollocationGrid& grid, const Eigen::MatrixXd& values);

/// Interpolant evaluated at s = L.
Eigen::Vector3d valueAtTip(const CollocationGrid& grid, const Eigen::MatrixXd& values);

}  // namespace magrod
