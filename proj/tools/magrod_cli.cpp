// Command line front end: single solves, the full wrench-sweep benchmark,
// step-bound tables, and grid-operator dumps.

#include <cstdio>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magrod/collocation.hpp"
#include "magrod/shooting.hpp"
#include "magrod/sweep.hpp"

using namespace magrod;

namespace {

struct CommonOptions {
  int order = 10;
  int magnus = 6;  // 4 or 6
  double length = 0.2;
  double radius = 0.001;
  double youngs_modulus = 70e9;
  double poisson = 0.3;
  double tolerance = 1e-9;
};

MagnusOrder magnusFromInt(int value) {
  return value == 4 ? MagnusOrder::Fourth : MagnusOrder::Sixth;
}

RodProperties rodFrom(const CommonOptions& opt) {
  return makeRod(opt.length, opt.radius, opt.youngs_modulus, opt.poisson);
}

SolverConfig configFrom(const CommonOptions& opt) {
  SolverConfig config;
  config.residual_tolerance = opt.tolerance;
  return config;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void printJsonVector(std::FILE* f, const char* key, const Eigen::VectorXd& v, bool comma) {
  std::fprintf(f, "\"%s\":[", key);
  for (int i = 0; i < v.size(); ++i)
    std::fprintf(f, "%s%s", i ? "," : "", num(v(i)).c_str());
  std::fprintf(f, "]%s\n", comma ? "," : "");
}

void printJsonMatrix(std::FILE* f, const char* key, const Eigen::MatrixXd& m, bool comma) {
  std::fprintf(f, "\"%s\":[", key);
  for (int i = 0; i < m.rows(); ++i) {
    std::fprintf(f, "%s[", i ? "," : "");
    for (int j = 0; j < m.cols(); ++j)
      std::fprintf(f, "%s%s", j ? "," : "", num(m(i, j)).c_str());
    std::fputc(']', f);
  }
  std::fprintf(f, "]%s\n", comma ? "," : "");
}

int runSolve(const CommonOptions& common, const std::vector<double>& force,
             const std::vector<double>& moment, const std::string& shape_path,
             int shape_samples, bool use_shooting) {
  const RodProperties props = rodFrom(common);
  const SolverConfig config = configFrom(common);
  TipWrench wrench;
  wrench.force = Eigen::Vector3d(force[0], force[1], force[2]);
  wrench.moment = Eigen::Vector3d(moment[0], moment[1], moment[2]);

  const double beta = wrench.force.lpNorm<Eigen::Infinity>() > 0 ? 0.05 / props.radius : 0.0;
  const CollocationGrid grid =
      makeGrid(common.order, props.length, requiredQuadPoints(magnusFromInt(common.magnus)));
  if (beta > 0.0) {
    const ConvergenceReport bound = checkConvergenceBound(grid, beta);
    if (bound.any_flagged) {
      std::fprintf(stderr,
                   "note: %d of %d segments exceed the convergence step bound "
                   "h_max = %.2f mm for beta = %.1f 1/m (solving anyway)\n",
                   static_cast<int>(std::count(bound.flagged.begin(), bound.flagged.end(), true)),
                   grid.numSegments(), bound.max_step * 1000.0, beta);
    }
  }

  Pose tip;
  Eigen::Vector3d tip_curvature;
  int iterations = 0;
  double residual = 0.0, seconds = 0.0;
  bool converged = false;

  RodSolution sol;
  if (use_shooting) {
    const ShootingSolution shot = solveShooting(props, wrench, config);
    tip = shot.tip_pose;
    tip_curvature = shot.tip_curvature;
    iterations = shot.iterations;
    residual = shot.residual_norm_inf;
    seconds = shot.wall_time_s;
    converged = shot.converged;
  } else {
    sol = solveCollocation(props, wrench, grid, magnusFromInt(common.magnus), config);
    tip = sol.tipPose();
    tip_curvature = (interpolationRow(grid, props.length) * sol.curvatures).transpose();
    iterations = sol.iterations;
    residual = sol.residual_norm_inf;
    seconds = sol.wall_time_s;
    converged = sol.converged;
  }

  std::printf("method:      %s\n", use_shooting ? "shooting" : "collocation");
  if (!use_shooting)
    std::printf("grid:        n=%d, magnus order %d, %d quadrature points\n", common.order,
                common.magnus, grid.numQuadPoints());
  std::printf("converged:   %s (%d iterations, residual %.3e, %.4f s)\n",
              converged ? "yes" : "NO", iterations, residual, seconds);
  std::printf("tip position (m):  %.12g  %.12g  %.12g\n", tip.p.x(), tip.p.y(), tip.p.z());
  for (int r = 0; r < 3; ++r)
    std::printf("tip rotation row %d: %.12g  %.12g  %.12g\n", r, tip.R(r, 0), tip.R(r, 1),
                tip.R(r, 2));
  std::printf("tip curvature (1/m): %.12g  %.12g  %.12g\n", tip_curvature.x(),
              tip_curvature.y(), tip_curvature.z());

  if (!shape_path.empty() && converged && !use_shooting) {
    std::FILE* f = std::fopen(shape_path.c_str(), "w");
    if (!f) {
      std::fprintf(stderr, "error: cannot open %s\n", shape_path.c_str());
      return 1;
    }
    std::fputs("s,x,y,z,u_x,u_y,u_z\n", f);
    for (int i = 0; i <= shape_samples; ++i) {
      const double s = props.length * i / shape_samples;
      const auto [pose, u] = evaluateSolution(sol, s);
      std::fprintf(f, "%s,%s,%s,%s,%s,%s,%s\n", num(s).c_str(), num(pose.p.x()).c_str(),
                   num(pose.p.y()).c_str(), num(pose.p.z()).c_str(), num(u.x()).c_str(),
                   num(u.y()).c_str(), num(u.z()).c_str());
    }
    std::fclose(f);
    std::printf("shape samples written to %s\n", shape_path.c_str());
  }
  return converged ? 0 : 1;
}

int runSweep(const CommonOptions& common, SweepSpec spec, const std::string& output,
             const std::string& format) {
  const RodProperties props = rodFrom(common);
  const SolverConfig config = configFrom(common);

  const BenchReport report = runBenchmark(spec, props, config);
  int failed = 0;
  for (const auto& c : report.cases) failed += !c.converged;

  std::printf("%zu case records (%d non-converged)\n", report.cases.size(), failed);
  std::printf("%4s %8s | %12s %12s %12s %12s %10s\n", "n", "order", "avg e_p %", "max e_p %",
              "avg e_r deg", "max e_r deg", "rate Hz");
  for (const auto& agg : report.aggregates) {
    std::printf("%4d %8s | %12.3e %12.3e %12.3e %12.3e %10.1f\n", agg.order,
                magnusOrderName(agg.magnus_order), agg.all_cases.avg_e_p_percent,
                agg.all_cases.max_e_p_percent, agg.all_cases.avg_e_r_deg,
                agg.all_cases.max_e_r_deg, agg.all_cases.mean_rate_hz);
  }

  if (!output.empty()) {
    emitReport(report, format == "json" ? ReportFormat::Json : ReportFormat::Csv, output);
    std::printf("report written to %s\n", output.c_str());
  }
  return failed == 0 ? 0 : 1;
}

int runBounds(const CommonOptions& common, const std::vector<double>& radii_mm, double strain,
              const std::vector<int>& orders) {
  std::printf("maximum step size for guaranteed expansion convergence (strain limit %g%%):\n",
              strain * 100.0);
  std::printf("%8s %12s %12s\n", "r (mm)", "beta (1/m)", "h_max (mm)");
  for (double r : radii_mm) {
    const double beta = strain / (r * 1e-3);
    std::printf("%8g %12.4g %12.2f\n", r, beta, maxStep(beta) * 1000.0);
  }

  const double beta = strain / common.radius;
  std::printf("\ngrid max segment width at L = %g mm (rod radius %g mm, beta = %.4g):\n",
              common.length * 1000.0, common.radius * 1000.0, beta);
  std::printf("%4s %18s %16s\n", "n", "max segment (mm)", "flagged segments");
  for (int n : orders) {
    const CollocationGrid grid = makeGrid(n, common.length, 2);
    const ConvergenceReport report = checkConvergenceBound(grid, beta);
    std::printf("%4d %18.2f %10d of %d\n", n, report.segment_widths.maxCoeff() * 1000.0,
                static_cast<int>(std::count(report.flagged.begin(), report.flagged.end(), true)),
                grid.numSegments());
  }
  return 0;
}

int runGridDump(const CommonOptions& common, const std::string& output) {
  const CollocationGrid grid =
      makeGrid(common.order, common.length, requiredQuadPoints(magnusFromInt(common.magnus)));
  std::FILE* f = output.empty() ? stdout : std::fopen(output.c_str(), "w");
  if (!f) {
    std::fprintf(stderr, "error: cannot open %s\n", output.c_str());
    return 1;
  }
  std::fprintf(f, "{\n\"n\":%d,\"length\":%s,\"nu\":%d,\n", grid.order,
               num(grid.length).c_str(), grid.quad_per_segment);
  printJsonVector(f, "points", grid.points, true);
  printJsonVector(f, "segment_edges", grid.segment_edges, true);
  printJsonVector(f, "quad_points", grid.quad_points, true);
  printJsonMatrix(f, "diff", grid.diff, true);
  printJsonMatrix(f, "diff_reduced", grid.diff_reduced, true);
  printJsonMatrix(f, "quad_eval", grid.quad_eval, true);
  printJsonMatrix(f, "modal", grid.modal, true);
  printJsonVector(f, "tip_row", grid.tip_row.transpose(), false);
  std::fputs("}\n", f);
  if (f != stdout) std::fclose(f);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cosserat rod statics: Chebyshev collocation with Magnus-expansion "
               "integration, benchmarked against a shooting-method oracle"};
  app.require_subcommand(1);
  app.fallthrough();  // rod/grid flags may follow the subcommand name
  app.set_config("--config", "", "flat key=value config file (flags override it)");

  CommonOptions common;
  app.add_option("-n,--order", common.order, "collocation polynomial order")
      ->check(CLI::Range(1, 64));
  app.add_option("--magnus", common.magnus, "Magnus expansion order (4 or 6)")
      ->check(CLI::IsMember({4, 6}));
  app.add_option("-L,--length", common.length, "rod length, m")->check(CLI::PositiveNumber);
  app.add_option("--radius", common.radius, "rod radius, m")->check(CLI::PositiveNumber);
  app.add_option("-E,--youngs", common.youngs_modulus, "Young's modulus, Pa")
      ->check(CLI::PositiveNumber);
  app.add_option("--poisson", common.poisson, "Poisson ratio");
  app.add_option("--tol", common.tolerance, "residual max-norm termination tolerance")
      ->check(CLI::PositiveNumber);

  // solve
  auto* solve = app.add_subcommand("solve", "solve one tip-wrench case");
  std::vector<double> force{0, 0, 0}, moment{0, 0, 0};
  std::string shape_path;
  int shape_samples = 100;
  bool use_shooting = false;
  solve->add_option("--force", force, "tip force fx fy fz, N (world frame)")->expected(3);
  solve->add_option("--moment", moment, "tip moment mx my mz, N m (world frame)")->expected(3);
  solve->add_option("--shape", shape_path, "write shape samples CSV (s,x,y,z,u_x,u_y,u_z)");
  solve->add_option("--samples", shape_samples, "number of shape sample intervals")
      ->check(CLI::Range(1, 100000));
  solve->add_flag("--shooting", use_shooting, "use the shooting solver instead");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run the wrench-sweep benchmark");
  SweepSpec spec;
  std::string output, format = "csv";
  std::vector<int> magnus_orders{4, 6};
  sweep->add_option("--force-levels", spec.force_levels, "per-axis force levels, N");
  sweep->add_option("--moment-levels", spec.moment_levels, "per-axis moment levels, N m");
  sweep->add_option("--steps", spec.interpolation_steps, "wrench interpolation steps")
      ->check(CLI::Range(1, 100));
  sweep->add_option("--orders", spec.orders, "collocation orders to benchmark");
  sweep->add_option("--magnus-orders", magnus_orders, "Magnus orders to benchmark (4, 6)");
  sweep->add_option("-o,--output", output, "report file path");
  sweep->add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));

  // bounds
  auto* bounds = app.add_subcommand("bounds", "print convergence step-size bounds");
  std::vector<double> radii_mm{1, 2, 3, 4};
  double strain = 0.05;
  std::vector<int> bound_orders{2, 4, 6, 8, 10};
  bounds->add_option("--radii", radii_mm, "rod radii to tabulate, mm");
  bounds->add_option("--strain", strain, "bending strain limit")->check(CLI::PositiveNumber);
  bounds->add_option("--orders", bound_orders, "collocation orders to tabulate");

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "dump grid operators as JSON");
  std::string grid_output;
  grid_cmd->add_option("-o,--output", grid_output, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) {
      return runSolve(common, force, moment, shape_path, shape_samples, use_shooting);
    }
    if (sweep->parsed()) {
      spec.magnus_orders.clear();
      for (int m : magnus_orders) spec.magnus_orders.push_back(magnusFromInt(m));
      return runSweep(common, spec, output, format);
    }
    if (bounds->parsed()) {
      return runBounds(common, radii_mm, strain, bound_orders);
    }
    if (grid_cmd->parsed()) {
      return runGridDump(common, grid_output);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
