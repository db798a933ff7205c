#include <gtest/gtest.h>

#include <random>

#include "monoinfer/errors.hpp"
#include "monoinfer/generator.hpp"
#include "monoinfer/mono_encode.hpp"
#include "monoinfer/net_infer.hpp"
#include "monoinfer/process_session.hpp"
#include "support.hpp"

using namespace monoinfer;
using monoinfer::testing::fig1Problem;
using monoinfer::testing::solverCommand;

namespace {

Model
tablesAsModel(const std::vector<SymbolRef>& symbols,
              const std::vector<UpdateFunctionTable>& tables)
{
  Model m;
  for (std::size_t v = 0; v < tables.size(); ++v)
  {
    FunctionTable t;
    t.symbol = symbols[v];
    t.points = tables[v].rows;
    m.setTable(t);
  }
  return m;
}

// Essentiality and fixed-point constraints evaluated directly over tables.
bool
constraintsHold(const InferenceProblem& p,
                const std::vector<SymbolRef>& symbols,
                const Model& m,
                const NetEncodeOptions& opts)
{
  for (const Regulation& r : p.regulations)
  {
    if (r.essential && !holds(essentialityConstraint(p, symbols, r.target, r.source, opts), m))
      return false;
  }
  for (const FixedPointObservation& f : p.observations)
  {
    if (!holds(fixedPointConstraint(p, symbols, f, opts), m)) return false;
  }
  return true;
}

std::vector<UpdateFunctionTable>
randomTables(const InferenceProblem& p, std::mt19937_64& rng)
{
  std::vector<UpdateFunctionTable> out;
  for (std::size_t v = 0; v < p.variables.size(); ++v)
  {
    UpdateFunctionTable t;
    t.variable = v;
    t.regulators = p.regulatorsOf(v);
    std::vector<Sort> sorts;
    for (std::size_t r : t.regulators) sorts.push_back(p.variables[r].domain);
    auto range = *p.variables[v].domain.range();
    for (auto& row : gridOf(sorts))
      t.rows.emplace(row, range.lo + static_cast<Value>(rng() % (range.hi - range.lo + 1)));
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

TEST(Signature, Fig1)
{
  InferenceProblem p = fig1Problem();
  auto symbols = buildSignature(p);
  ASSERT_EQ(symbols.size(), 3u);
  EXPECT_EQ(symbols[0]->name, "f_a");
  EXPECT_EQ(symbols[0]->arity(), 3u);
  EXPECT_EQ(symbols[1]->arity(), 2u);
  EXPECT_EQ(symbols[2]->arity(), 1u);
  EXPECT_EQ(symbols[0]->resultSort, Sort::bounded(0, 3));
  MonotonicitySpec spec = buildMonotonicitySpec(p, symbols);
  // f_a(a, b, c): a unknown, b anti, c mono.
  ArgumentSigns a = spec.signsOf("f_a");
  EXPECT_EQ(a.monotone, std::set<std::size_t>{2});
  EXPECT_EQ(a.antitone, std::set<std::size_t>{1});
  EXPECT_EQ(spec.signsOf("f_b").monotone, (std::set<std::size_t>{0, 1}));
}

TEST(Constraints, Shapes)
{
  InferenceProblem p;
  p.variables = {{"x", Sort::boolean()}, {"y", Sort::bounded(0, 2)}};
  p.regulations = {{0, 1, RegulationSign::Monotone, true},
                   {1, 1, RegulationSign::Unknown, true},
                   {1, 0, RegulationSign::AntiMonotone, false}};
  auto symbols = buildSignature(p);
  NetEncodeOptions raw;
  raw.simplify = false;
  EXPECT_EQ(essentialityConstraint(p, symbols, 1, 0).toString(),
            "(exists ((z2 Int)) (distinct (f_y true z2) (f_y false z2)))");
  EXPECT_EQ(essentialityConstraint(p, symbols, 1, 0, raw).toString(),
            "(exists ((x Bool) (y Bool) (z2 Int)) (distinct (f_y x z2) (f_y y z2)))");
  EXPECT_EQ(essentialityConstraint(p, symbols, 1, 1).toString(),
            "(exists ((x Int) (y Int) (z1 Bool)) (distinct (f_y z1 x) (f_y z1 y)))");
  EXPECT_THROW(essentialityConstraint(p, symbols, 0, 1), UsageError);

  FixedPointObservation f{"F1", {{1, 2}}};
  EXPECT_EQ(fixedPointConstraint(p, symbols, f).toString(),
            "(exists ((x1 Bool)) (and (= x1 (f_x 2)) (= (f_y x1 2) 2)))");
  EXPECT_EQ(fixedPointConstraint(p, symbols, f, raw).toString(),
            "(exists ((x1 Bool) (x2 Int)) "
            "(and (= x1 (f_x x2)) (= x2 (f_y x1 x2)) (= x2 2)))");
  FixedPointObservation total{"F2", {{0, 1}, {1, 0}}};
  EXPECT_EQ(fixedPointConstraint(p, symbols, total).toString(),
            "(and (= (f_x 0) true) (= (f_y true 0) 0))");
  EXPECT_THROW(fixedPointConstraint(p, symbols, {"F3", {{1, 3}}}), SortError);
}

TEST(Encoding, QuantifierFreeWithBounds)
{
  InferenceProblem p = fig1Problem();
  NetworkEncoding enc = encodeInference(p);
  EXPECT_FALSE(hasQuantifiers(enc.formula));
  EXPECT_TRUE(freeVariables(enc.formula).empty());
  // One witness per bound variable of the essentiality constraints:
  // 3 * 4 for f_a, 2 * 3 for f_b and 2 for f_c. Observations are total.
  EXPECT_EQ(enc.skolems.size(), 20u);
  std::string text = enc.formula.toString();
  EXPECT_NE(text.find("(<= (f_b 0 0) 3)"), std::string::npos);
  EXPECT_NE(text.find("(= (f_b 0 1) 1)"), std::string::npos);
  EXPECT_NE(text.find("(= (f_b 1 2) 2)"), std::string::npos);
}

// Property: on random small problems and random tables, the quantified
// constraints (expanded over the finite domains) hold exactly when the
// tables pass the independent essentiality and fixed-point checks, with and
// without simplification.
TEST(Constraints, AgreeWithVerifierOnRandomTables)
{
  std::mt19937_64 rng(99);
  int accepted = 0;
  for (int inst = 0; inst < 40; ++inst)
  {
    GeneratorParams params;
    params.nVars = 2 + inst % 3;
    params.maxArity = 2;
    params.domainSize = inst % 4 == 0 ? 3 : 2;
    params.nObservations = 2;
    params.observeRatio = inst % 2 ? 0.6 : 1.0;
    params.essentialRatio = 1.0;
    InferenceProblem p = generateInstance(1000 + inst, params).problem;
    InferenceProblem unsigned_ = p;
    for (Regulation& r : unsigned_.regulations) r.sign = RegulationSign::Unknown;
    auto symbols = buildSignature(p);
    for (int trial = 0; trial < 30; ++trial)
    {
      auto tables = randomTables(p, rng);
      bool expected = verifySolution(unsigned_, tables).ok;
      accepted += expected;
      Model m = tablesAsModel(symbols, tables);
      for (bool simplify : {true, false})
      {
        NetEncodeOptions o;
        o.simplify = simplify;
        EXPECT_EQ(constraintsHold(p, symbols, m, o), expected) << inst << "/" << trial;
      }
    }
  }
  EXPECT_GT(accepted, 20);
}

TEST(Decode, Fig1EndToEnd)
{
  InferenceProblem p = fig1Problem();
  NetworkEncoding enc = encodeInference(p);
  for (Strategy s : {Strategy::InstEager, Strategy::InstLazy})
  {
    ProcessSolverSession session(solverCommand());
    session.setTimeLimit(std::chrono::seconds(60));
    SolveOutcome out = solveWith(s, enc.formula, enc.spec, session);
    ASSERT_TRUE(out.verdict.isSat()) << out.verdict.reason();
    auto tables = decodeSolution(out.verdict.model(), p, enc);
    VerifyResult r = verifySolution(p, tables);
    EXPECT_TRUE(r.ok) << r.violation;
    EXPECT_EQ(tables[1].at({0, 0}), 0);
    EXPECT_EQ(tables[1].at({0, 1}), 1);
    EXPECT_EQ(tables[1].at({1, 2}), 2);
  }
}

TEST(Decode, UnsatSelfInhibition)
{
  InferenceProblem p;
  p.variables = {{"x", Sort::boolean()}};
  p.regulations = {{0, 0, RegulationSign::AntiMonotone, true}};
  p.observations = {{"F1", {{0, 1}}}};
  NetworkEncoding enc = encodeInference(p);
  ProcessSolverSession session(solverCommand());
  EXPECT_TRUE(solveWith(Strategy::InstEager, enc.formula, enc.spec, session).verdict.isUnsat());
}

TEST(Decode, RejectsUnbounded)
{
  InferenceProblem p;
  p.variables = {{"x", Sort::integer()}};
  p.regulations = {{0, 0, RegulationSign::Monotone, false}};
  NetworkEncoding enc = encodeInference(p);
  EXPECT_THROW(decodeSolution(Model{}, p, enc), UsageError);
}
