#include <benchmark/benchmark.h>

#include "monoinfer/generator.hpp"
#include "monoinfer/mono_encode.hpp"
#include "monoinfer/net_infer.hpp"
#include "monoinfer/smtlib.hpp"

using namespace monoinfer;

namespace {

InferenceProblem
desk(std::size_t vars, std::size_t arity)
{
  GeneratorParams p;
  p.nVars = vars;
  p.maxArity = arity;
  return generateInstance(42, p).problem;
}

}  // namespace

static void
BM_EncodeInference(benchmark::State& state)
{
  InferenceProblem p = desk(state.range(0), state.range(1));
  NetEncodeOptions o;
  o.simplify = state.range(2) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(encodeInference(p, o));
}
BENCHMARK(BM_EncodeInference)
    ->ArgsProduct({{10, 30, 50}, {4, 8, 12}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

static void
BM_EagerLemmas(benchmark::State& state)
{
  NetworkEncoding enc = encodeInference(desk(state.range(0), state.range(1)));
  std::size_t lemmas = 0;
  for (auto _ : state)
  {
    EncodedProblem e = encodeEager(enc.formula, enc.spec);
    lemmas = e.lemmaCount;
    benchmark::DoNotOptimize(e);
  }
  state.counters["lemmas"] = static_cast<double>(lemmas);
}
BENCHMARK(BM_EagerLemmas)->ArgsProduct({{10, 30, 50}, {4, 8, 12}})->Unit(benchmark::kMillisecond);

// Candidate lemmas are all the lazy loop precomputes before the first check.
static void
BM_LemmaCandidates(benchmark::State& state)
{
  NetworkEncoding enc = encodeInference(desk(state.range(0), 8));
  for (auto _ : state) benchmark::DoNotOptimize(lemmaCandidates(enc.formula, enc.spec));
}
BENCHMARK(BM_LemmaCandidates)->Arg(10)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

static void
BM_QuantifiedEncodings(benchmark::State& state)
{
  NetworkEncoding enc = encodeInference(desk(state.range(0), 8));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(encodeQuantIndividual(enc.formula, enc.spec));
    benchmark::DoNotOptimize(encodeQuantAggregated(enc.formula, enc.spec));
  }
}
BENCHMARK(BM_QuantifiedEncodings)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

static void
BM_EmitScript(benchmark::State& state)
{
  NetworkEncoding enc = encodeInference(desk(state.range(0), 8));
  EncodedProblem e = encodeEager(enc.formula, enc.spec);
  std::vector<Term> assertions = e.assertions();
  std::size_t bytes = 0;
  for (auto _ : state)
  {
    std::string text = emitSmtlib(Signature{}, assertions);
    bytes = text.size();
    benchmark::DoNotOptimize(text);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes));
}
BENCHMARK(BM_EmitScript)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
