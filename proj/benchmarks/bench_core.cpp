#include <benchmark/benchmark.h>

#include "vekua/vekua.hpp"

namespace {

using namespace vekua;

GeneratingSequence helmholtz_sequence() {
  ConditionSData d = condition_s_preset(ConditionSPreset::CartesianY);
  d.f_of_rho = parse("exp(c*rho)", {"c"});
  d.params = {{"c", 1.0}};
  const std::vector<Point2> grid{{0.0, 0.0}, {0.5, 0.5}};
  return build_sequence_condition_s(d, grid);
}

void BM_JetMultiply(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const Jet a = exp(Jet::variable(2, order, 0, 0.3)) * Jet::variable(2, order, 1, -0.2);
  const Jet b = sin(Jet::variable(2, order, 1, -0.2) + Jet::variable(2, order, 0, 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMultiply)->Arg(2)->Arg(4)->Arg(8);

void BM_FormalPowerRay(benchmark::State& state) {
  const FormalPowerEngine engine(helmholtz_sequence(), {0.0, 0.0}, static_cast<int>(state.range(0)),
                                 {Bicomplex(1.0), Bicomplex::k()});
  for (auto _ : state) benchmark::DoNotOptimize(engine.evaluate(Point2{0.6, -0.4}));
}
BENCHMARK(BM_FormalPowerRay)->Arg(2)->Arg(10);

void BM_FormalPowerJet(benchmark::State& state) {
  const FormalPowerEngine engine(helmholtz_sequence(), {0.0, 0.0}, 4, {Bicomplex(1.0), Bicomplex::k()});
  for (auto _ : state) benchmark::DoNotOptimize(engine.evaluate_jet({0.6, -0.4}, 2));
}
BENCHMARK(BM_FormalPowerJet);

void BM_CollocationSolve(benchmark::State& state) {
  auto P = [](const char* s) { return ScalarField2::from_expr(parse(s)); };
  DirichletProblem pr{EllipticCoefficients{P("1"), P("-1"), P("exp(y)")}, helmholtz_sequence()};
  pr.domain = Domain::disk(1.0);
  pr.boundary_data = P("exp(x)");
  pr.N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_collocation(pr));
}
BENCHMARK(BM_CollocationSolve)->Arg(9)->Arg(21)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
