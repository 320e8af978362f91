#include <benchmark/benchmark.h>

#include <vector>

#include "delreal/constraints.hpp"
#include "delreal/delaunay.hpp"
#include "delreal/instances.hpp"
#include "delreal/realizer.hpp"
#include "delreal/solver.hpp"

namespace {

using namespace delreal;

Instance instance_of_size(int n) { return random_instance(n, 7 + static_cast<std::uint64_t>(n), 1000); }

void BM_Delaunay(benchmark::State& state) {
  const Instance inst = instance_of_size(static_cast<int>(state.range(0)));
  const std::vector<RatPoint> pts = to_rat_points(inst.points);
  for (auto _ : state) benchmark::DoNotOptimize(delaunay(pts));
}
BENCHMARK(BM_Delaunay)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_BuildConst(benchmark::State& state) {
  const Instance inst = instance_of_size(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_const(inst.graph));
}
BENCHMARK(BM_BuildConst)->Arg(8)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_BuildConstSqu(benchmark::State& state) {
  const Instance inst = instance_of_size(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_constsqu(inst.graph));
}
BENCHMARK(BM_BuildConstSqu)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_CompiledPenalty(benchmark::State& state) {
  const Instance inst = instance_of_size(static_cast<int>(state.range(0)));
  const ConstraintSystem s = build_const(inst.graph);
  const CompiledSystem compiled(s);
  SolverConfig config;
  const std::vector<double> x = dense_values(s, initialize(inst.graph, s, config));
  std::vector<double> grad(x.size());
  for (auto _ : state) benchmark::DoNotOptimize(compiled.penalty(x, 1.0, grad));
}
BENCHMARK(BM_CompiledPenalty)->Arg(8)->Arg(15);

void BM_ExactEvaluate(benchmark::State& state) {
  const Instance inst = instance_of_size(static_cast<int>(state.range(0)));
  const std::vector<RatPoint> pts = to_rat_points(inst.points);
  const ConstraintSystem s = build_const(inst.graph);
  const auto centers = witness_centers(inst.graph, pts, delaunay(pts).faces);
  const ExactAssignment a = const_assignment(s, inst.graph, pts, centers);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(s, a, false));
}
BENCHMARK(BM_ExactEvaluate)->Arg(8)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_Certify(benchmark::State& state) {
  const Instance inst = instance_of_size(static_cast<int>(state.range(0)));
  const std::vector<RatPoint> pts = to_rat_points(inst.points);
  for (auto _ : state) benchmark::DoNotOptimize(certify(inst.graph, pts));
}
BENCHMARK(BM_Certify)->Arg(8)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_Realize(benchmark::State& state) {
  const Instance inst = instance_of_size(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(realize(inst.graph));
}
BENCHMARK(BM_Realize)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace
BENCHMARK_MAIN();
