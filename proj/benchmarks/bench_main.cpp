#include <benchmark/benchmark.h>

#include "partcat/easiness.hpp"
#include "partcat/halflib.hpp"
#include "partcat/linmaps.hpp"
#include "partcat/maximality.hpp"

using namespace partcat;

static void BM_Enumerate(benchmark::State& state) {
  const auto w = ColoredWord::white(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate({}, w));
}
BENCHMARK(BM_Enumerate)->DenseRange(4, 8, 2);

static void BM_BuildMap(benchmark::State& state) {
  const auto p = Partition::parse("ooo|ooo:(1,6)(2,5)(3,4)");
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_map(p, n));
}
BENCHMARK(BM_BuildMap)->DenseRange(2, 6, 2);

static void BM_ComposeMaps(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = build_map(Partition::parse("ooo|ooo:(1,6)(2,5)(3,4)"), n);
  const auto b = build_map(Partition::parse("ooo|ooo:(1,2,4)(3,5,6)"), n);
  for (auto _ : state) benchmark::DoNotOptimize(multiply(b, a));
}
BENCHMARK(BM_ComposeMaps)->DenseRange(2, 5, 1);

static void BM_ClosePartitions(benchmark::State& state) {
  const auto bound = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(close_partitions({}, bound));
}
BENCHMARK(BM_ClosePartitions)->DenseRange(4, 6, 2)->Unit(benchmark::kMillisecond);

static void BM_CloseLinearCrossing(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<TensorMap> gens{to_one_row(build_map(Partition::crossing(Color::white, Color::white), n))};
  for (auto _ : state) benchmark::DoNotOptimize(close_linear(gens, n, 4, ClosureMode::real));
}
BENCHMARK(BM_CloseLinearCrossing)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

static void BM_Envelope(benchmark::State& state) {
  const auto g = GroupModel::HNsd(3, 4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(easy_envelope(g, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Envelope)->DenseRange(2, 4, 2)->Unit(benchmark::kMillisecond);

static void BM_TripleThreeLegs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_triple(n, ColoredWord::parse("ooo")));
}
BENCHMARK(BM_TripleThreeLegs)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

static void BM_Order2Check(benchmark::State& state) {
  const auto d = CategoryName::parse("NC2Real"), e = CategoryName::parse("P2");
  const auto pi = Partition::parse("oo|oo:(1,4)(2,3)"), sigma = Partition::parse("oo|oo:(1,2)(3,4)");
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(order2_check(d, e, pi, sigma, 2, -3, n, 4));
}
BENCHMARK(BM_Order2Check)->DenseRange(3, 5, 1)->Unit(benchmark::kMillisecond);

static void BM_CappingSearch(benchmark::State& state) {
  const auto p = Partition::parse("|oooooooo:(1,5)(2,6)(3,7)(4,8)");
  for (auto _ : state) benchmark::DoNotOptimize(capping_search(p));
}
BENCHMARK(BM_CappingSearch)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
