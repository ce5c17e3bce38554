#include <benchmark/benchmark.h>

#include "magrod/collocation.hpp"
#include "magrod/shooting.hpp"

using namespace magrod;

namespace {

RodProperties nitinolRod() { return makeRod(0.2, 0.001, 70e9, 0.3); }

TipWrench combinedWrench() {
  TipWrench w;
  w.force = Eigen::Vector3d(1.0, -0.5, 0.3);
  w.moment = Eigen::Vector3d(0.2, 0.5, -0.1);
  return w;
}

void BM_MakeGrid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(makeGrid(n, 0.2, 3));
  }
}
BENCHMARK(BM_MakeGrid)->Arg(4)->Arg(10);

void BM_MagnusStep(benchmark::State& state) {
  const RodProperties props = nitinolRod();
  const CollocationGrid grid = makeGrid(10, props.length, 3);
  Eigen::MatrixXd curvatures = Eigen::MatrixXd::Constant(11, 3, 4.0);
  const Eigen::MatrixXd quad = valuesAtQuadrature(grid, curvatures);
  std::array<Eigen::Matrix4d, 3> samples;
  const double h = grid.segment_edges(1) - grid.segment_edges(0);
  for (int k = 0; k < 3; ++k) {
    Eigen::Matrix4d X = Eigen::Matrix4d::Zero();
    X.topLeftCorner<3, 3>() = hat(Eigen::Vector3d(quad.row(k))) * h;
    X(2, 3) = h;
    samples[k] = X;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        magnusStep(std::span<const Eigen::Matrix4d>(samples.data(), 3), MagnusOrder::Sixth));
  }
}
BENCHMARK(BM_MagnusStep);

void BM_ReconstructPoses(benchmark::State& state) {
  const RodProperties props = nitinolRod();
  const CollocationGrid grid = makeGrid(static_cast<int>(state.range(0)), props.length, 3);
  Eigen::MatrixXd curvatures = Eigen::MatrixXd::Constant(grid.order + 1, 3, 4.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstructPoses(grid, curvatures, props, MagnusOrder::Sixth));
  }
}
BENCHMARK(BM_ReconstructPoses)->Arg(4)->Arg(10);

void BM_SolveCollocation(benchmark::State& state) {
  const RodProperties props = nitinolRod();
  const SolverConfig config;
  const int n = static_cast<int>(state.range(0));
  const CollocationGrid grid = makeGrid(n, props.length, 3);
  const TipWrench wrench = combinedWrench();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        solveCollocation(props, wrench, grid, MagnusOrder::Sixth, config));
  }
}
BENCHMARK(BM_SolveCollocation)->Arg(2)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SolveShooting(benchmark::State& state) {
  const RodProperties props = nitinolRod();
  const SolverConfig config;
  const TipWrench wrench = combinedWrench();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solveShooting(props, wrench, config));
  }
}
BENCHMARK(BM_SolveShooting)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
