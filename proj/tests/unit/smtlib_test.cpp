#include <gtest/gtest.h>

#include "monoinfer/errors.hpp"
#include "monoinfer/smtlib.hpp"
#include "support.hpp"

using namespace monoinfer;
using monoinfer::testing::RunningExample;

TEST(Sexpr, ParsesAtomsListsAndQuotes)
{
  auto es = parseSexprs("sat (a (b |x y|) \"s\") ; comment\n unknown");
  ASSERT_EQ(es.size(), 3u);
  EXPECT_TRUE(es[0].isAtom("sat"));
  ASSERT_FALSE(es[1].atom);
  EXPECT_EQ(es[1].items[1].items[1].text, "x y");
  EXPECT_EQ(es[1].items[2].text, "\"s\"");
  EXPECT_TRUE(es[2].isAtom("unknown"));
}

TEST(Sexpr, Errors)
{
  EXPECT_THROW(parseSexprs("(a b"), ParseError);
  EXPECT_THROW(parseSexprs(")"), ParseError);
  try
  {
    parseSexprs("(a\n  ))");
    FAIL();
  }
  catch (const ParseError& e)
  {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 4u);
  }
}

TEST(SexprReader, IncrementalFeeding)
{
  SexprReader r;
  Sexpr out;
  r.feed("(a (b");
  EXPECT_FALSE(r.next(out));
  r.feed(" c)) sa");
  ASSERT_TRUE(r.next(out));
  EXPECT_EQ(out.toString(), "(a (b c))");
  EXPECT_FALSE(r.next(out));
  r.feed("t\n");
  ASSERT_TRUE(r.next(out));
  EXPECT_TRUE(out.isAtom("sat"));
}

TEST(ParseValue, Literals)
{
  EXPECT_EQ(parseValue(parseSexprs("42")[0]), 42);
  EXPECT_EQ(parseValue(parseSexprs("(- 7)")[0]), -7);
  EXPECT_EQ(parseValue(parseSexprs("true")[0]), 1);
  EXPECT_EQ(parseValue(parseSexprs("false")[0]), 0);
  EXPECT_THROW(parseValue(parseSexprs("x")[0]), SolverError);
  EXPECT_THROW(parseValue(parseSexprs("(+ 1 2)")[0]), SolverError);
}

TEST(ModelResponse, DefineFunIteChains)
{
  Model m = parseModelResponse(R"((
  (define-fun c1 () Int 6)
  (define-fun c2 () Int (- 1))
  (define-fun f ((x!0 Int) (x!1 Int)) Int
    (ite (and (= x!0 6) (= x!1 2)) 4
    (ite (and (= x!0 11) (= x!1 0)) 0
      7)))
  (define-fun p ((x!0 Bool)) Bool (ite x!0 false true))
))");
  EXPECT_EQ(m.constants().at("c1"), 6);
  EXPECT_EQ(m.constants().at("c2"), -1);
  const FunctionTable* f = m.table("f");
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->at({6, 2}), 4);
  EXPECT_EQ(f->at({11, 0}), 0);
  EXPECT_EQ(f->at({0, 0}), 7);
  const FunctionTable* p = m.table("p");
  EXPECT_EQ(p->at({1}), 0);
  EXPECT_EQ(p->at({0}), 1);
  EXPECT_TRUE(p->symbol->resultSort.isBool());
}

TEST(ModelResponse, GetValuePairs)
{
  RunningExample ex;
  Signature sig;
  sig.extend(ex.phi());
  Model m = parseModelResponse("((c1 6) ((f 6 2) 4) ((f 11 0) 0) ((g (- 1)) 3))", &sig);
  EXPECT_EQ(m.constants().at("c1"), 6);
  EXPECT_EQ(m.table("f")->at({11, 0}), 0);
  EXPECT_EQ(m.table("g")->at({-1}), 3);
  EXPECT_EQ(m.table("f")->symbol, ex.f);
}

TEST(ModelResponse, UnsupportedBodiesQuoteRawText)
{
  try
  {
    parseModelResponse("((define-fun f ((x Int)) Int (+ x 1)))");
    FAIL();
  }
  catch (const SolverError& e)
  {
    EXPECT_NE(std::string(e.what()).find("(+ x 1)"), std::string::npos);
  }
  EXPECT_THROW(parseModelResponse("((define-fun f ((x Int)) Int (ite (> x 1) 2 3)))"),
               SolverError);
  EXPECT_THROW(parseModelResponse("((define-fun f ((x Real)) Int 1))"), SolverError);
  EXPECT_THROW(parseModelResponse("((c1 6)"), SolverError);
}

TEST(Emit, DeclarationsAndQuoting)
{
  SymbolRef f = makeSymbol("f", {Sort::integer(), Sort::boolean()}, Sort::integer());
  EXPECT_EQ(declareFunction(*f), "(declare-fun f (Int Bool) Int)");
  EXPECT_EQ(declareConstant(Term::constant("!sk3", Sort::integer())),
            "(declare-fun |!sk3| () Int)");
  EXPECT_EQ(smtSymbol("f_a1"), "f_a1");
  EXPECT_EQ(smtSymbol("1x"), "|1x|");
  EXPECT_EQ(smtSymbol("x y"), "|x y|");
}

TEST(Emit, LogicSelection)
{
  RunningExample ex;
  EXPECT_EQ(selectLogic({ex.phi()}), "QF_UFLIA");
  Term p = Term::constant("p", Sort::boolean());
  EXPECT_EQ(selectLogic({p}), "QF_UF");
  EXPECT_EQ(selectLogic({Term::forall({{"x", Sort::boolean()}},
                                      Term::implies(Term::var("x", Sort::boolean()), p))}),
            "UF");
}

TEST(Emit, ScriptIsDeterministic)
{
  RunningExample ex;
  EmitOptions opts;
  opts.logic = "ALL";
  opts.checkSat = false;
  std::string a = emitSmtlib(Signature{}, {ex.phi()}, opts);
  EXPECT_EQ(a, emitSmtlib(Signature{}, {ex.phi()}, opts));
  EXPECT_NE(a.find("(set-logic ALL)"), std::string::npos);
  EXPECT_EQ(a.find("(check-sat)"), std::string::npos);
  EXPECT_LT(a.find("(declare-fun f"), a.find("(declare-fun g"));
}

TEST(Signature, ClashesAreRejected)
{
  Signature sig;
  sig.extend(Term::constant("a", Sort::integer()));
  EXPECT_THROW(sig.extend(Term::constant("a", Sort::boolean())), SortError);
  SymbolRef a = makeSymbol("a", {Sort::integer()}, Sort::integer());
  EXPECT_THROW(sig.extend(Term::le(Term::apply(a, {Term::intLit(1)}), Term::intLit(0))),
               SortError);
}
