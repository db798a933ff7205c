#include <benchmark/benchmark.h>

#include "monoinfer/generator.hpp"
#include "monoinfer/oracle.hpp"

using namespace monoinfer;

static void
BM_OracleBoolean(benchmark::State& state)
{
  GeneratorParams p;
  p.nVars = state.range(0);
  p.maxArity = state.range(1);
  p.mode = GenerationMode::Perturbed;
  InferenceProblem problem = generateInstance(7, p).problem;
  for (auto _ : state) benchmark::DoNotOptimize(oracleInference(problem));
}
BENCHMARK(BM_OracleBoolean)->ArgsProduct({{3, 5}, {2, 3}});

// Partial observations force joint enumeration over the hidden values.
static void
BM_OraclePartialObservations(benchmark::State& state)
{
  GeneratorParams p;
  p.nVars = state.range(0);
  p.maxArity = 2;
  p.observeRatio = 0.5;
  InferenceProblem problem = generateInstance(3, p).problem;
  for (auto _ : state) benchmark::DoNotOptimize(oracleInference(problem));
}
BENCHMARK(BM_OraclePartialObservations)->Arg(3)->Arg(5);

static void
BM_CountTernary(benchmark::State& state)
{
  GeneratorParams p;
  p.nVars = state.range(0);
  p.maxArity = 2;
  p.domainSize = 3;
  InferenceProblem problem = generateInstance(5, p).problem;
  for (auto _ : state) benchmark::DoNotOptimize(countSolutions(problem));
}
BENCHMARK(BM_CountTernary)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
