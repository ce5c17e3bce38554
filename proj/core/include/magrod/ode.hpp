#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace magrod {

struct OdeOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double initial_step = 0.0;   // 0: pick from the interval
  double min_step_factor = 1e-12;
  int max_steps = 200000;
  bool store_dense = false;    // keep every accepted step
};

struct OdeResult {
  bool success = false;
  Eigen::VectorXd y;                    // terminal state
  std::vector<double> t;                // accepted abscissae (dense mode)
  std::vector<Eigen::VectorXd> states;  // accepted states (dense mode)
  int accepted_steps = 0;
  int rejected_steps = 0;
};

/// Embedded Dormand-Prince 5(4) with standard PI-free step control.
/// rhs: (double t, const VectorXd& y) -> VectorXd.
template <class Rhs>
OdeResult integrateDp54(Rhs&& rhs, const Eigen::VectorXd& y0, double t0, double t1,
                        const OdeOptions& opts = {}) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // b (5th order) minus the embedded 4th-order weights
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  OdeResult out;
  const double span = t1 - t0;
  double h = opts.initial_step > 0.0 ? opts.initial_step : span / 100.0;
  h = std::min(h, span);
  const double h_min = span * opts.min_step_factor;

  double t = t0;
  Eigen::VectorXd y = y0;
  Eigen::VectorXd k1 = rhs(t, y);
  if (opts.store_dense) {
    out.t.push_back(t);
    out.states.push_back(y);
  }

  Eigen::VectorXd k2, k3, k4, k5, k6, k7, y_new, err;
  for (int step = 0; step < opts.max_steps; ++step) {
    if (t >= t1) break;
    h = std::min(h, t1 - t);

    k2 = rhs(t + c2 * h, y + h * (a21 * k1));
    k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    k7 = rhs(t + h, y_new);  // FSAL
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double norm2 = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double scale =
          opts.abs_tol + opts.rel_tol * std::max(std::abs(y(i)), std::abs(y_new(i)));
      const double r = err(i) / scale;
      norm2 += r * r;
    }
    const double err_norm = std::sqrt(norm2 / static_cast<double>(y.size()));

    if (err_norm <= 1.0 || h <= h_min) {
      t += h;
      y.swap(y_new);
      k1.swap(k7);
      ++out.accepted_steps;
      if (opts.store_dense) {
        out.t.push_back(t);
        out.states.push_back(y);
      }
    } else {
      ++out.rejected_steps;
    }

    const double factor =
        err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
    h = std::max(h, h_min);
  }

  out.success = t >= t1 && y.allFinite();
  out.y = std::move(y);
  return out;
}

}  // namespace magrod
