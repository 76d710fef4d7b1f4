#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "cheeger/closed_forms.hpp"
#include "cheeger/smoothing.hpp"
#include "cheeger/solver.hpp"

namespace {

using namespace cheeger;

ConvexPolygon centered_square() {
  return ConvexPolygon({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
}

void bm_two_ball_grid_serial(benchmark::State& state) {
  for (auto _ : state) {
    const GridMinimum g = two_ball_grid_scan_serial(0.7, 1.3, 0.5, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(g.value);
  }
}
BENCHMARK(bm_two_ball_grid_serial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void bm_two_ball_grid_parallel(benchmark::State& state) {
  for (auto _ : state) {
    const GridMinimum g = two_ball_grid_scan(0.7, 1.3, 0.5, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(g.value);
  }
}
BENCHMARK(bm_two_ball_grid_parallel)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void bm_smooth_serial(benchmark::State& state) {
  const ConvexPolygon sq = centered_square();
  for (auto _ : state) {
    const SmoothedBoundary s = smooth_serial(sq, 20, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(s.r_smooth.data());
  }
}
BENCHMARK(bm_smooth_serial)->Arg(180)->Arg(720)->Unit(benchmark::kMillisecond);

void bm_smooth_parallel(benchmark::State& state) {
  const ConvexPolygon sq = centered_square();
  for (auto _ : state) {
    const SmoothedBoundary s = smooth(sq, 20, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(s.r_smooth.data());
  }
}
BENCHMARK(bm_smooth_parallel)->Arg(180)->Arg(720)->Unit(benchmark::kMillisecond);

void bm_solve_square(benchmark::State& state) {
  const ShapeSpec sq{RectangleSpec{1.0, 1.0}};
  const Exponent e = Exponent::make(2, 1.5);
  SolverOptions opt;
  opt.vertex_count = 24;
  opt.multistarts = static_cast<int>(state.range(0));
  opt.max_iters = 8000;
  for (auto _ : state) {
    const CheegerEstimate est = solve_convex(sq, e, opt);
    benchmark::DoNotOptimize(est.value);
  }
}
BENCHMARK(bm_solve_square)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
