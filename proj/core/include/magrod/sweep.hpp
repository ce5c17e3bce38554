#pragma once

#include <string>
#include <utility>
#include <vector>

#include "magrod/collocation.hpp"
#include "magrod/shooting.hpp"

namespace magrod {

/// Wrench-sweep definition. The defaults produce 3^6 = 729 terminal wrenches
/// and, with 3 interpolation steps each, 2187 solved cases per method.
struct SweepSpec {
  std::vector<double> force_levels{-1.0, 0.0, 1.0};    // N, per axis
  std::vector<double> moment_levels{-0.5, 0.0, 0.5};   // N m, per axis
  int interpolation_steps = 3;
  std::vector<int> orders{2, 4, 6, 8, 10};
  std::vector<MagnusOrder> magnus_orders{MagnusOrder::Fourth, MagnusOrder::Sixth};
};

/// One solved load case: chain_id indexes the terminal wrench, step_index
/// runs 1..interpolation_steps along the linear ramp from zero wrench.
struct SweepCase {
  int case_id = 0;
  int chain_id = 0;
  int step_index = 0;
  TipWrench wrench;
};

/// Cases ordered lexicographically over (fx, fy, fz, mx, my, mz) levels,
/// then by step index. Throws std::invalid_argument on an empty level set
/// or steps < 1.
std::vector<SweepCase> generateSweep(const SweepSpec& spec);

/// Tip-pose disagreement between the two methods: position error as percent
/// of arc length and geodesic rotation angle in degrees. Throws
/// std::invalid_argument when either solution did not converge.
std::pair<double, double> tipErrorMetrics(const RodSolution& collocation,
                                          const ShootingSolution& shooting, double length);

struct CaseResult {
  int case_id = 0;
  TipWrench wrench;
  int step_index = 0;
  int order = 0;                 // collocation polynomial order n
  MagnusOrder magnus_order = MagnusOrder::Fourth;
  double e_p_percent = 0.0;
  double e_r_deg = 0.0;
  int iterations = 0;
  double time_s = 0.0;
  bool converged = false;        // solve converged and the oracle was available
};

struct AggregateStats {
  int cases = 0;
  int converged = 0;
  double avg_e_p_percent = 0.0;
  double max_e_p_percent = 0.0;
  double avg_e_r_deg = 0.0;
  double max_e_r_deg = 0.0;
  double mean_rate_hz = 0.0;
};

/// Per (n, Magnus order) aggregates, over every interpolation step and over
/// the terminal wrenches only.
struct AggregateRecord {
  int order = 0;
  MagnusOrder magnus_order = MagnusOrder::Fourth;
  AggregateStats all_cases;
  AggregateStats terminal_cases;
};

struct BenchReport {
  std::vector<CaseResult> cases;
  std::vector<AggregateRecord> aggregates;
};

/// Runs the full sweep: one warm-started shooting chain per terminal wrench
/// (shared across every collocation configuration), then every (n, order)
/// combination with warm-started collocation chains. A chain whose oracle
/// fails is aborted with its remaining cases recorded as failures; a failed
/// warm-started collocation solve is retried cold before being recorded.
/// Cases are solved sequentially so per-case timing is meaningful.
BenchReport runBenchmark(const SweepSpec& spec, const RodProperties& props,
                         const SolverConfig& config);

enum class ReportFormat { Json, Csv };

/// Writes the report. CSV columns: case_id, fx, fy, fz, mx, my, mz,
/// step_index, n, magnus_order, e_p_percent, e_r_deg, iterations, time_s,
/// converged. JSON mirrors the same per-case fields plus the aggregates.
/// Floating-point fields carry 17 significant digits. Throws
/// std::runtime_error on I/O failure.
void emitReport(const BenchReport& report, ReportFormat format, const std::string& path);

}  // namespace magrod
