// Serial reference kernels against their OpenMP counterparts.

#include "ogk/bourn.hpp"

#include <benchmark/benchmark.h>

using namespace ogk;

namespace {

constexpr std::size_t kCells = 1u << 20;

// K((Z/order)^copies, degree), truncated one level up.
AbOmegaGroupoid em_input(long order, std::size_t copies, int degree) {
  return em_groupoid(FgAbGroup(0, std::vector<Integer>(copies, order)), degree, degree + 1);
}

const TruncatedOmegaGpd& sample(int which) {
  static const TruncatedOmegaGpd small = materialize(em_input(3, 2, 2), kCells);
  static const TruncatedOmegaGpd large = materialize(em_input(4, 2, 2), kCells);
  return which ? large : small;
}

void validate(benchmark::State& state, Exec exec) {
  const auto& g = sample(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(validate_category(g, exec));
  state.counters["top_cells"] = static_cast<double>(g.count(g.level()));
}

void build(benchmark::State& state, Exec exec) {
  const auto input = em_input(state.range(0) ? 4 : 3, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(materialize(input, kCells, exec));
}

void groupoid(benchmark::State& state, Exec exec) {
  const auto& g = sample(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_groupoid(g, exec));
}

} // namespace

BENCHMARK_CAPTURE(validate, serial, Exec::serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(validate, parallel, Exec::parallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(build, serial, Exec::serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(build, parallel, Exec::parallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(groupoid, serial, Exec::serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(groupoid, parallel, Exec::parallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
