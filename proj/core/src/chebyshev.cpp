#include "magrod/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "magrod/magnus.hpp"

namespace magrod {

namespace {

// Row of the modal-evaluation matrix at arc length s: [T0/2, T1, ..., Tn].
Eigen::RowVectorXd modalEvalRow(int order, double s, double length) {
  Eigen::RowVectorXd row(order + 1);
  for (int k = 0; k <= order; ++k) {
    row(k) = chebyshevEval(k, s, length);
  }
  row(0) *= 0.5;
  return row;
}

}  // namespace

double chebyshevEval(int degree, double s, double length) {
  if (degree < 0) {
    throw std::invalid_argument("chebyshevEval: degree must be non-negative");
  }
  if (!(s >= 0.0 && s <= length)) {
    throw std::invalid_argument("chebyshevEval: arc length outside [0, L]");
  }
  const double x = (2.0 * s - length) / length;
  double tkm1 = 1.0;
  if (degree == 0) return tkm1;
  double tk = x;
  for (int k = 2; k <= degree; ++k) {
    const double next = 2.0 * x * tk - tkm1;
    tkm1 = tk;
    tk = next;
  }
  return tk;
}

CollocationGrid makeGrid(int order, double length, int quad_per_segment) {
  if (order < 1) throw std::invalid_argument("makeGrid: order must be >= 1");
  if (!(length > 0.0)) throw std::invalid_argument("makeGrid: length must be positive");
  if (quad_per_segment != 2 && quad_per_segment != 3) {
    throw std::invalid_argument("makeGrid: quad_per_segment must be 2 or 3");
  }

  const int n = order;
  CollocationGrid g;
  g.order = n;
  g.length = length;
  g.quad_per_segment = quad_per_segment;

  // Zeros of T_{n+1} with the derivative values needed by the
  // differentiation matrix, evaluated from the trigonometric closed forms
  // (stable at clustered nodes). The raw cosine formula is descending in k,
  // so everything is sorted into ascending arc length together.
  struct Node {
    double s;
    double d1;  // d/ds T_{n+1} at the node
    double d2;  // d^2/ds^2 T_{n+1} at the node
  };
  std::vector<Node> nodes(n + 1);
  const double scale = 2.0 / length;  // d x / d s
  for (int k = 0; k <= n; ++k) {
    const double theta = (2.0 * k + 1.0) * std::numbers::pi / (2.0 * (n + 1.0));
    const double x = std::cos(theta);
    const double dx1 = (n + 1.0) * ((k % 2 == 0) ? 1.0 : -1.0) / std::sin(theta);
    const double dx2 = x * dx1 / (1.0 - x * x);  // Chebyshev ODE at a zero
    nodes[k] = Node{length * (x + 1.0) / 2.0, dx1 * scale, dx2 * scale * scale};
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.s < b.s; });

  g.points.resize(n + 1);
  for (int i = 0; i <= n; ++i) g.points(i) = nodes[i].s;

  g.segment_edges.resize(n + 3);
  g.segment_edges(0) = 0.0;
  g.segment_edges.segment(1, n + 1) = g.points;
  g.segment_edges(n + 2) = length;

  g.diff.resize(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i == j) {
        g.diff(i, i) = 0.5 * nodes[i].d2 / nodes[i].d1;
      } else {
        g.diff(i, j) = nodes[i].d1 / ((nodes[i].s - nodes[j].s) * nodes[j].d1);
      }
    }
  }
  g.diff_reduced = g.diff.topRows(n);

  const Eigen::VectorXd t = legendrePoints(quad_per_segment);
  const int m = quad_per_segment * (n + 2);
  g.quad_points.resize(m);
  for (int seg = 0; seg < n + 2; ++seg) {
    const double a = g.segment_edges(seg);
    const double width = g.segment_edges(seg + 1) - a;
    for (int k = 0; k < quad_per_segment; ++k) {
      g.quad_points(seg * quad_per_segment + k) = a + t(k) * width;
    }
  }

  g.modal.resize(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      g.modal(i, j) = 2.0 / (n + 1.0) * chebyshevEval(i, g.points(j), length);
    }
  }

  g.quad_eval.resize(m, n + 1);
  for (int r = 0; r < m; ++r) {
    g.quad_eval.row(r) = modalEvalRow(n, g.quad_points(r), length);
  }
  g.quad_interp = g.quad_eval * g.modal;
  g.tip_row = modalEvalRow(n, length, length) * g.modal;

  return g;
}

Eigen::RowVectorXd interpolationRow(const CollocationGrid& grid, double s) {
  return modalEvalRow(grid.order, s, grid.length) * grid.modal;
}

Eigen::VectorXd differentiate(const CollocationGrid& grid, const Eigen::VectorXd& values) {
  if (values.size() != grid.order + 1) {
    throw std::invalid_argument("differentiate: expected n+1 sampled values");
  }
  return grid.diff * values;
}

Eigen::MatrixXd valuesAtQuadrature(const CollocationGrid& grid, const Eigen::MatrixXd& values) {
  if (values.rows() != grid.order + 1 || values.cols() != 3) {
    throw std::invalid_argument("valuesAtQuadrature: expected (n+1)x3 collocation values");
  }
  return grid.quad_interp * values;
}

Eigen::Vector3d valueAtTip(const CollocationGrid& grid, const Eigen::MatrixXd& values) {
  if (values.rows() != grid.order + 1 || values.cols() != 3) {
    throw std::invalid_argument("valueAtTip: expected (n+1)x3 collocation values");
  }
  return (grid.tip_row * values).transpose();
}

}  // namespace magrod
