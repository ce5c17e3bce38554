#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "magrod/chebyshev.hpp"
#include "support/oracles.hpp"

using namespace magrod;

namespace {

// Closed-form collocation points L/2 (1 + cos((2k+1) pi / (2n+2))), ascending.
Eigen::VectorXd referencePoints(int n, double L) {
  Eigen::VectorXd c(n + 1);
  for (int k = 0; k <= n; ++k) {
    c(n - k) = L / 2.0 * (1.0 + std::cos((2.0 * k + 1.0) * std::numbers::pi / (2.0 * n + 2.0)));
  }
  return c;
}

double maxSegmentWidth(const CollocationGrid& g) {
  double width = 0.0;
  for (int i = 0; i + 1 < g.segment_edges.size(); ++i) {
    width = std::max(width, g.segment_edges(i + 1) - g.segment_edges(i));
  }
  return width;
}

Eigen::VectorXd polyVals(const Eigen::VectorXd& coeffs, const Eigen::VectorXd& s) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(s.size());
  for (int i = 0; i < s.size(); ++i) {
    double acc = 0.0;
    for (int k = coeffs.size() - 1; k >= 0; --k) acc = acc * s(i) + coeffs(k);
    out(i) = acc;
  }
  return out;
}

Eigen::VectorXd polyDerivVals(const Eigen::VectorXd& coeffs, const Eigen::VectorXd& s) {
  Eigen::VectorXd d(std::max<Eigen::Index>(coeffs.size() - 1, 1));
  d.setZero();
  for (int k = 1; k < coeffs.size(); ++k) d(k - 1) = k * coeffs(k);
  return polyVals(d, s);
}

}  // namespace

TEST_CASE("chebyshevEval") {
  const double L = 0.4;
  CHECK(chebyshevEval(0, 0.123, L) == 1.0);
  CHECK(chebyshevEval(1, L, L) == doctest::Approx(1.0));
  CHECK(chebyshevEval(1, 0.0, L) == doctest::Approx(-1.0));

  const double s = 0.3 * L;
  const double x = (2.0 * s - L) / L;
  CHECK(chebyshevEval(5, s, L) == doctest::Approx(std::cos(5.0 * std::acos(x))).epsilon(1e-13));

  CHECK_THROWS_AS(chebyshevEval(3, -0.01, L), std::invalid_argument);
  CHECK_THROWS_AS(chebyshevEval(3, L + 0.01, L), std::invalid_argument);
  CHECK_THROWS_AS(chebyshevEval(-1, 0.1, L), std::invalid_argument);
}

TEST_CASE("makeGrid geometry") {
  SUBCASE("n=2 collocation points") {
    const CollocationGrid g = makeGrid(2, 0.2, 3);
    const Eigen::VectorXd ref = referencePoints(2, 0.2);
    CHECK((g.points - ref).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(g.points(0) == doctest::Approx(0.0133975).epsilon(1e-4));
    CHECK(g.points(1) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(g.points(2) == doctest::Approx(0.1866025).epsilon(1e-4));
  }

  SUBCASE("segment widths match the tabulated step sizes") {
    const double expected_mm[] = {86.60, 58.78, 43.38, 34.20, 28.17};
    int idx = 0;
    for (int n : {2, 4, 6, 8, 10}) {
      const CollocationGrid g = makeGrid(n, 0.2, 2);
      CHECK(std::abs(maxSegmentWidth(g) * 1000.0 - expected_mm[idx]) < 0.01);
      ++idx;
    }
  }

  SUBCASE("max segment width shrinks monotonically with n") {
    double previous = 1e9;
    for (int n = 2; n <= 10; ++n) {
      const double width = maxSegmentWidth(makeGrid(n, 0.2, 2));
      CHECK(width < previous);
      previous = width;
    }
  }

  SUBCASE("points ascending and interior") {
    for (int n : {1, 3, 7, 10}) {
      const CollocationGrid g = makeGrid(n, 0.35, 2);
      for (int i = 0; i <= n; ++i) {
        CHECK(g.points(i) > 0.0);
        CHECK(g.points(i) < g.length);
        if (i > 0) CHECK(g.points(i) > g.points(i - 1));
      }
      CHECK(g.numQuadPoints() == 2 * (n + 2));
      CHECK((g.diff * Eigen::VectorXd::Ones(n + 1)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(makeGrid(0, 0.2, 2), std::invalid_argument);
    CHECK_THROWS_AS(makeGrid(4, -1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(makeGrid(4, 0.2, 4), std::invalid_argument);
    CHECK_THROWS_AS(makeGrid(4, 0.2, 1), std::invalid_argument);
  }
}

TEST_CASE("differentiation matrix") {
  SUBCASE("constants annihilated, s^2 differentiated") {
    const CollocationGrid g = makeGrid(5, 0.2, 2);
    CHECK(differentiate(g, Eigen::VectorXd::Constant(6, 3.7)).cwiseAbs().maxCoeff() < 1e-10);

    const Eigen::VectorXd sq = g.points.array().square();
    const Eigen::VectorXd want = 2.0 * g.points;
    CHECK((differentiate(g, sq) - want).cwiseAbs().maxCoeff() < 1e-10);
  }

  SUBCASE("exact for random polynomials of degree <= n") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int n : {2, 4, 6, 8, 10}) {
      const CollocationGrid g = makeGrid(n, 0.2, 2);
      for (int rep = 0; rep < 20; ++rep) {
        Eigen::VectorXd coeffs(n + 1);
        for (int k = 0; k <= n; ++k) coeffs(k) = dist(rng) / std::pow(g.length, k);
        const Eigen::VectorXd vals = polyVals(coeffs, g.points);
        const Eigen::VectorXd want = polyDerivVals(coeffs, g.points);
        const double scale = std::max(1.0, want.cwiseAbs().maxCoeff());
        CHECK((differentiate(g, vals) - want).cwiseAbs().maxCoeff() / scale < 1e-10);
      }
    }
  }

  SUBCASE("spectral accuracy on sin(8s)") {
    // Node-derivative error of the degree-n interpolant of sin(8s) on [0,1],
    // frozen from an independent polynomial fit: 9.87e-3 (n=10),
    // 9.21e-6 (n=14), 2.57e-9 (n=18). Decay is spectral in n.
    const double bounds[] = {1.1e-2, 1e-5, 1e-8};
    double previous = 1e300;
    int idx = 0;
    for (int n : {10, 14, 18}) {
      const CollocationGrid g = makeGrid(n, 1.0, 2);
      const Eigen::VectorXd vals = (8.0 * g.points.array()).sin();
      const Eigen::VectorXd want = 8.0 * (8.0 * g.points.array()).cos();
      const double err = (differentiate(g, vals) - want).cwiseAbs().maxCoeff();
      CHECK(err < bounds[idx]);
      CHECK(err < previous);
      previous = err;
      ++idx;
    }
  }

  SUBCASE("dimension mismatch") {
    const CollocationGrid g = makeGrid(4, 0.2, 2);
    CHECK_THROWS_AS(differentiate(g, Eigen::VectorXd::Zero(4)), std::invalid_argument);
  }
}

TEST_CASE("interpolation to quadrature points") {
  const CollocationGrid g = makeGrid(4, 0.2, 3);

  SUBCASE("zeros and constants reproduce exactly") {
    CHECK(valuesAtQuadrature(g, Eigen::MatrixXd::Zero(5, 3)).isZero(0.0));
    const double kappa = -2.31;
    const Eigen::MatrixXd constant = Eigen::MatrixXd::Constant(5, 3, kappa);
    CHECK((valuesAtQuadrature(g, constant).array() - kappa).abs().maxCoeff() < 1e-12);
  }

  SUBCASE("polynomial columns evaluated exactly") {
    Eigen::MatrixXd samples(5, 3);
    samples.col(0) = g.points;
    samples.col(1) = g.points.array().square();
    samples.col(2) = g.points.array().cube();
    const Eigen::MatrixXd got = valuesAtQuadrature(g, samples);
    for (int r = 0; r < g.numQuadPoints(); ++r) {
      const double q = g.quad_points(r);
      CHECK(got(r, 0) == doctest::Approx(q).epsilon(1e-10));
      CHECK(got(r, 1) == doctest::Approx(q * q).epsilon(1e-10));
      CHECK(got(r, 2) == doctest::Approx(q * q * q).epsilon(1e-10));
    }
  }

  SUBCASE("tip value") {
    CHECK(valueAtTip(g, Eigen::MatrixXd::Zero(5, 3)).isZero(0.0));
    const Eigen::MatrixXd constant = Eigen::MatrixXd::Constant(5, 3, 4.2);
    CHECK((valueAtTip(g, constant).array() - 4.2).abs().maxCoeff() < 1e-12);

    const double alpha = -3.4;
    Eigen::MatrixXd linear = Eigen::MatrixXd::Zero(5, 3);
    linear.col(1) = alpha * g.points;
    const Eigen::Vector3d tip = valueAtTip(g, linear);
    CHECK(std::abs(tip(1) - alpha * g.length) < 1e-12);
    CHECK(std::abs(tip(0)) < 1e-12);
  }

  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(valuesAtQuadrature(g, Eigen::MatrixXd::Zero(4, 3)), std::invalid_argument);
    CHECK_THROWS_AS(valueAtTip(g, Eigen::MatrixXd::Zero(5, 2)), std::invalid_argument);
  }
}

TEST_CASE("modal transform inverts interpolant evaluation") {
  // Sample a polynomial written in the modal basis (a0/2 convention) at the
  // collocation points; the modal matrix must recover the coefficients.
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int n : {3, 6, 10}) {
    const CollocationGrid g = makeGrid(n, 0.25, 2);
    Eigen::VectorXd modal(n + 1);
    for (int k = 0; k <= n; ++k) modal(k) = dist(rng);

    Eigen::VectorXd sampled(n + 1);
    for (int j = 0; j <= n; ++j) {
      double acc = 0.5 * modal(0);
      for (int k = 1; k <= n; ++k) acc += modal(k) * chebyshevEval(k, g.points(j), g.length);
      sampled(j) = acc;
    }
    CHECK((g.modal * sampled - modal).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("interpolation operator is a projection") {
  // Resampling at a point set that contains the collocation points and then
  // interpolating again must match interpolating once.
  const CollocationGrid g = makeGrid(5, 0.3, 2);
  const int n = g.order;

  Eigen::MatrixXd through_nodes(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) through_nodes.row(i) = interpolationRow(g, g.points(i));

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  Eigen::MatrixXd values(n + 1, 3);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < 3; ++j) values(i, j) = dist(rng);

  const Eigen::MatrixXd once = valuesAtQuadrature(g, values);
  const Eigen::MatrixXd twice = valuesAtQuadrature(g, (through_nodes * values).eval());
  CHECK((once - twice).cwiseAbs().maxCoeff() < 1e-10);
}
