#include "magrod/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace magrod {

namespace {

int magnusOrderNumber(MagnusOrder order) { return order == MagnusOrder::Fourth ? 4 : 6; }

AggregateStats accumulateStats(const std::vector<CaseResult>& cases, bool terminal_only,
                               int terminal_step) {
  AggregateStats stats;
  double time_sum = 0.0;
  for (const CaseResult& c : cases) {
    if (terminal_only && c.step_index != terminal_step) continue;
    ++stats.cases;
    if (!c.converged) continue;
    ++stats.converged;
    stats.avg_e_p_percent += c.e_p_percent;
    stats.avg_e_r_deg += c.e_r_deg;
    stats.max_e_p_percent = std::max(stats.max_e_p_percent, c.e_p_percent);
    stats.max_e_r_deg = std::max(stats.max_e_r_deg, c.e_r_deg);
    time_sum += c.time_s;
  }
  if (stats.converged > 0) {
    stats.avg_e_p_percent /= stats.converged;
    stats.avg_e_r_deg /= stats.converged;
    if (time_sum > 0.0) stats.mean_rate_hz = stats.converged / time_sum;
  }
  return stats;
}

}  // namespace

std::vector<SweepCase> generateSweep(const SweepSpec& spec) {
  if (spec.force_levels.empty() || spec.moment_levels.empty()) {
    throw std::invalid_argument("generateSweep: level sets must be non-empty");
  }
  if (spec.interpolation_steps < 1) {
    throw std::invalid_argument("generateSweep: interpolation_steps must be >= 1");
  }

  std::vector<SweepCase> cases;
  const auto& f = spec.force_levels;
  const auto& m = spec.moment_levels;
  cases.reserve(f.size() * f.size() * f.size() * m.size() * m.size() * m.size() *
                spec.interpolation_steps);

  int case_id = 0;
  int chain_id = 0;
  for (double fx : f)
    for (double fy : f)
      for (double fz : f)
        for (double mx : m)
          for (double my : m)
            for (double mz : m) {
              const Eigen::Vector3d force(fx, fy, fz);
              const Eigen::Vector3d moment(mx, my, mz);
              for (int step = 1; step <= spec.interpolation_steps; ++step) {
                const double fraction =
                    static_cast<double>(step) / spec.interpolation_steps;
                cases.push_back(SweepCase{case_id++, chain_id, step,
                                          TipWrench{fraction * force, fraction * moment}});
              }
              ++chain_id;
            }
  return cases;
}

std::pair<double, double> tipErrorMetrics(const RodSolution& collocation,
                                          const ShootingSolution& shooting, double length) {
  if (!collocation.converged || !shooting.converged) {
    throw std::invalid_argument("tipErrorMetrics: both solutions must have converged");
  }
  const Pose& tip_c = collocation.tipPose();
  const Pose& tip_s = shooting.tip_pose;

  const double e_p = (tip_c.p - tip_s.p).norm() / length * 100.0;
  const double cos_arg =
      std::clamp(((tip_s.R * tip_c.R.transpose()).trace() - 1.0) / 2.0, -1.0, 1.0);
  const double e_r = std::acos(cos_arg) * 180.0 / std::numbers::pi;
  return {e_p, e_r};
}

BenchReport runBenchmark(const SweepSpec& spec, const RodProperties& props,
                         const SolverConfig& config) {
  if (spec.orders.empty() || spec.magnus_orders.empty()) {
    throw std::invalid_argument("runBenchmark: orders and magnus_orders must be non-empty");
  }
  const std::vector<SweepCase> cases = generateSweep(spec);
  const int steps = spec.interpolation_steps;
  const int chains = static_cast<int>(cases.size()) / steps;

  // One shooting chain per terminal wrench, reused by every collocation
  // configuration. A chain is aborted at the first oracle failure.
  std::vector<ShootingSolution> oracle(cases.size());
  for (int chain = 0; chain < chains; ++chain) {
    Eigen::Vector3d warm = Eigen::Vector3d::Zero();
    bool alive = true;
    for (int j = 0; j < steps; ++j) {
      const int idx = chain * steps + j;
      if (!alive) continue;
      oracle[idx] = solveShooting(props, cases[idx].wrench, config, &warm);
      if (oracle[idx].converged) {
        warm = oracle[idx].base_curvature;
      } else {
        alive = false;
      }
    }
  }

  BenchReport report;
  report.cases.reserve(cases.size() * spec.orders.size() * spec.magnus_orders.size());

  for (int n : spec.orders) {
    for (MagnusOrder magnus_order : spec.magnus_orders) {
      const CollocationGrid grid =
          makeGrid(n, props.length, requiredQuadPoints(magnus_order));
      std::vector<CaseResult> combo;
      combo.reserve(cases.size());

      for (int chain = 0; chain < chains; ++chain) {
        Eigen::MatrixXd warm;
        for (int j = 0; j < steps; ++j) {
          const int idx = chain * steps + j;
          const SweepCase& sweep_case = cases[idx];

          CaseResult result;
          result.case_id = sweep_case.case_id;
          result.wrench = sweep_case.wrench;
          result.step_index = sweep_case.step_index;
          result.order = n;
          result.magnus_order = magnus_order;

          if (!oracle[idx].converged) {
            combo.push_back(result);  // chain aborted by the oracle
            continue;
          }

          RodSolution sol = solveCollocation(props, sweep_case.wrench, grid, magnus_order,
                                             config, warm.size() ? &warm : nullptr);
          result.iterations = sol.iterations;
          result.time_s = sol.wall_time_s;
          if (!sol.converged && warm.size()) {
            sol = solveCollocation(props, sweep_case.wrench, grid, magnus_order, config,
                                   nullptr);
            result.iterations += sol.iterations;
            result.time_s += sol.wall_time_s;
          }

          if (sol.converged) {
            warm = sol.curvatures;
            const auto [e_p, e_r] = tipErrorMetrics(sol, oracle[idx], props.length);
            result.e_p_percent = e_p;
            result.e_r_deg = e_r;
            result.converged = true;
          }
          combo.push_back(result);
        }
      }

      AggregateRecord agg;
      agg.order = n;
      agg.magnus_order = magnus_order;
      agg.all_cases = accumulateStats(combo, false, steps);
      agg.terminal_cases = accumulateStats(combo, true, steps);
      report.aggregates.push_back(agg);
      report.cases.insert(report.cases.end(), combo.begin(), combo.end());
    }
  }
  return report;
}

namespace {

// 17 significant digits: enough for doubles to round-trip exactly.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void writeCsv(std::FILE* f, const BenchReport& report) {
  std::fputs(
      "case_id,fx,fy,fz,mx,my,mz,step_index,n,magnus_order,"
      "e_p_percent,e_r_deg,iterations,time_s,converged\n",
      f);
  for (const CaseResult& c : report.cases) {
    std::fprintf(f, "%d,%s,%s,%s,%s,%s,%s,%d,%d,%d,%s,%s,%d,%s,%d\n", c.case_id,
                 num(c.wrench.force.x()).c_str(), num(c.wrench.force.y()).c_str(),
                 num(c.wrench.force.z()).c_str(), num(c.wrench.moment.x()).c_str(),
                 num(c.wrench.moment.y()).c_str(), num(c.wrench.moment.z()).c_str(),
                 c.step_index, c.order, magnusOrderNumber(c.magnus_order),
                 num(c.e_p_percent).c_str(), num(c.e_r_deg).c_str(), c.iterations,
                 num(c.time_s).c_str(), c.converged ? 1 : 0);
  }
}

void writeStats(std::FILE* f, const char* key, const AggregateStats& s) {
  std::fprintf(f,
               "\"%s\":{\"cases\":%d,\"converged\":%d,\"avg_e_p_percent\":%s,"
               "\"max_e_p_percent\":%s,\"avg_e_r_deg\":%s,\"max_e_r_deg\":%s,"
               "\"mean_rate_hz\":%s}",
               key, s.cases, s.converged, num(s.avg_e_p_percent).c_str(),
               num(s.max_e_p_percent).c_str(), num(s.avg_e_r_deg).c_str(),
               num(s.max_e_r_deg).c_str(), num(s.mean_rate_hz).c_str());
}

void writeJson(std::FILE* f, const BenchReport& report) {
  std::fputs("{\n\"cases\":[", f);
  for (size_t i = 0; i < report.cases.size(); ++i) {
    const CaseResult& c = report.cases[i];
    std::fprintf(f,
                 "%s\n{\"case_id\":%d,\"fx\":%s,\"fy\":%s,\"fz\":%s,"
                 "\"mx\":%s,\"my\":%s,\"mz\":%s,\"step_index\":%d,\"n\":%d,"
                 "\"magnus_order\":%d,\"e_p_percent\":%s,\"e_r_deg\":%s,"
                 "\"iterations\":%d,\"time_s\":%s,\"converged\":%s}",
                 i == 0 ? "" : ",", c.case_id, num(c.wrench.force.x()).c_str(),
                 num(c.wrench.force.y()).c_str(), num(c.wrench.force.z()).c_str(),
                 num(c.wrench.moment.x()).c_str(), num(c.wrench.moment.y()).c_str(),
                 num(c.wrench.moment.z()).c_str(), c.step_index, c.order,
                 magnusOrderNumber(c.magnus_order), num(c.e_p_percent).c_str(),
                 num(c.e_r_deg).c_str(), c.iterations, num(c.time_s).c_str(),
                 c.converged ? "true" : "false");
  }
  std::fputs("\n],\n\"aggregates\":[", f);
  for (size_t i = 0; i < report.aggregates.size(); ++i) {
    const AggregateRecord& a = report.aggregates[i];
    std::fprintf(f, "%s\n{\"n\":%d,\"magnus_order\":%d,", i == 0 ? "" : ",", a.order,
                 magnusOrderNumber(a.magnus_order));
    writeStats(f, "all_cases", a.all_cases);
    std::fputc(',', f);
    writeStats(f, "terminal_cases", a.terminal_cases);
    std::fputc('}', f);
  }
  std::fputs("\n]\n}\n", f);
}

}  // namespace

void emitReport(const BenchReport& report, ReportFormat format, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("emitReport: cannot open " + path);
  if (format == ReportFormat::Csv) {
    writeCsv(f, report);
  } else {
    writeJson(f, report);
  }
  if (std::fclose(f) != 0) throw std::runtime_error("emitReport: write failed for " + path);
}

}  // namespace magrod
