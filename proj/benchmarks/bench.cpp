#include <benchmark/benchmark.h>

#include "ckb/admissible.hpp"
#include "ckb/measure.hpp"
#include "ckb/representation.hpp"

using namespace ckb;

namespace {

Diagram three() {
  return Diagram::from_matrix(ZeroOneMatrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}));
}

Diagram four_a() {
  return Diagram::from_matrix(
      ZeroOneMatrix::from_rows({{1, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 0, 0}, {1, 0, 1, 0}}));
}

Diagram four_b() {
  return Diagram::from_matrix(
      ZeroOneMatrix::from_rows({{1, 0, 1, 1}, {0, 1, 1, 0}, {1, 0, 0, 1}, {0, 1, 0, 0}}));
}

void BM_path_words(benchmark::State& state) {
  Diagram D = three();
  for (auto _ : state) benchmark::DoNotOptimize(path_words(D, int(state.range(0))));
}
BENCHMARK(BM_path_words)->Arg(6)->Arg(8)->Arg(10);

void BM_perron(benchmark::State& state) {
  ZeroOneMatrix A = four_a().A;
  for (auto _ : state) benchmark::DoNotOptimize(perron_data(A));
}
BENCHMARK(BM_perron);

void BM_find_admissible_4x4(benchmark::State& state) {
  Diagram A = four_a(), B = four_b();
  for (auto _ : state) benchmark::DoNotOptimize(find_admissible(A, B));
}
BENCHMARK(BM_find_admissible_4x4);

void BM_ck_verify(benchmark::State& state) {
  Diagram D = three();
  LevelContext ctx(D, MeasureSpec::invariant(), int(state.range(0)) + 1);
  for (auto _ : state) benchmark::DoNotOptimize(ck_verify_edge(ctx, int(state.range(0))));
}
BENCHMARK(BM_ck_verify)->Arg(4)->Arg(6);

void BM_cylinder_measure(benchmark::State& state) {
  Diagram D = three();
  MeasureSpec mu = resolve_spec(D, MeasureSpec::invariant());
  auto words = path_words(D, 8);
  for (auto _ : state) {
    Scalar total;
    for (const auto& w : words) total += cylinder_measure(D, mu, w);
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_cylinder_measure);

}  // namespace

BENCHMARK_MAIN();
