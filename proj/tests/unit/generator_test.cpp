#include <gtest/gtest.h>

#include "monoinfer/errors.hpp"
#include "monoinfer/generator.hpp"
#include "monoinfer/oracle.hpp"
#include "monoinfer/problem_io.hpp"

using namespace monoinfer;

TEST(Generator, Deterministic)
{
  GeneratorParams params;
  params.nVars = 8;
  params.observeRatio = 0.6;
  for (std::uint64_t seed : {0ull, 1ull, 77ull})
  {
    EXPECT_EQ(writeProblem(generateInstance(seed, params).problem),
              writeProblem(generateInstance(seed, params).problem));
  }
  EXPECT_NE(writeProblem(generateInstance(1, params).problem),
            writeProblem(generateInstance(2, params).problem));
}

TEST(Generator, ShapeFollowsParameters)
{
  GeneratorParams params;
  params.nVars = 30;
  params.maxArity = 8;
  params.nObservations = 4;
  params.signRatio = 1.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed)
  {
    GeneratedInstance g = generateInstance(seed, params);
    const InferenceProblem& p = g.problem;
    ASSERT_EQ(p.variables.size(), 30u);
    EXPECT_EQ(p.variables[0].name, "v1");
    EXPECT_TRUE(p.allBoolean());
    for (std::size_t v = 0; v < 30; ++v)
    {
      std::size_t k = p.regulatorsOf(v).size();
      EXPECT_GE(k, 1u);
      EXPECT_LE(k, 8u);
    }
    for (const Regulation& r : p.regulations) EXPECT_NE(r.sign, RegulationSign::Unknown);
    EXPECT_GE(p.observations.size(), 1u);
    EXPECT_LE(p.observations.size(), 4u);
    for (const auto& f : p.observations) EXPECT_TRUE(f.total(30));
    EXPECT_EQ(g.groundTruth.size(), 30u);
  }
}

// Property: the planted model itself is a witness for every planted
// instance, whatever the domain size and observation ratio.
TEST(Generator, PlantedModelIsASolution)
{
  for (std::uint64_t seed = 1; seed <= 300; ++seed)
  {
    GeneratorParams params;
    params.nVars = 1 + seed % 9;
    params.maxArity = 1 + seed % 4;
    params.domainSize = 2 + seed % 3;
    params.signRatio = (seed % 5) / 4.0;
    params.essentialRatio = (seed % 3) / 2.0;
    params.observeRatio = seed % 2 ? 1.0 : 0.4;
    params.nObservations = seed % 4;
    GeneratedInstance g = generateInstance(seed, params);
    VerifyResult r = verifySolution(g.problem, g.groundTruth);
    EXPECT_TRUE(r.ok) << "seed " << seed << ": " << r.violation;
    for (const auto& f : g.problem.observations) EXPECT_FALSE(f.values.empty());
  }
}

TEST(Generator, PerturbedProducesUnsatInstances)
{
  GeneratorParams params;
  params.nVars = 4;
  params.maxArity = 2;
  params.mode = GenerationMode::Perturbed;
  int unsat = 0, total = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed)
  {
    GeneratedInstance g = generateInstance(seed, params);
    ++total;
    unsat += !oracleInference(g.problem).sat;
  }
  EXPECT_GT(unsat, 0);
  EXPECT_LT(unsat, total);
}

TEST(Generator, ParameterValidation)
{
  GeneratorParams p;
  p.nVars = 0;
  EXPECT_THROW(generateInstance(1, p), UsageError);
  p = {};
  p.domainSize = 1;
  EXPECT_THROW(generateInstance(1, p), UsageError);
  p = {};
  p.signRatio = 1.5;
  EXPECT_THROW(generateInstance(1, p), UsageError);
  p = {};
  p.observeRatio = 0.0;
  EXPECT_THROW(generateInstance(1, p), UsageError);
  p = {};
  p.nVars = 40;
  p.maxArity = 20;
  EXPECT_THROW(generateInstance(1, p), UsageError);
  p = {};
  p.mode = GenerationMode::Perturbed;
  p.nObservations = 0;
  EXPECT_THROW(generateInstance(1, p), UsageError);
  EXPECT_EQ(parseGenerationMode("planted"), GenerationMode::Planted);
  EXPECT_THROW(parseGenerationMode("random"), UsageError);
}
