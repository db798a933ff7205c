#pragma once

#include <cstdlib>
#include <string>

#include "monoinfer/monotonicity.hpp"
#include "monoinfer/network.hpp"
#include "monoinfer/problem_io.hpp"
#include "monoinfer/process_session.hpp"
#include "monoinfer/term.hpp"

namespace monoinfer::testing {

inline std::string
sourcePath(const std::string& relative)
{
  return std::string(MONOINFER_SOURCE_DIR) + "/" + relative;
}

// f(c1, 2) = 4 ∧ f(c1 + 5, 0) = c2 ∧ g(c2) < g(4)
struct RunningExample
{
  SymbolRef f = makeSymbol("f", {Sort::integer(), Sort::integer()}, Sort::integer());
  SymbolRef g = makeSymbol("g", {Sort::integer()}, Sort::integer());
  Term c1 = Term::constant("c1", Sort::integer());
  Term c2 = Term::constant("c2", Sort::integer());

  Term phi() const
  {
    return Term::land({
        Term::eq(Term::apply(f, {c1, Term::intLit(2)}), Term::intLit(4)),
        Term::eq(Term::apply(f, {Term::add({c1, Term::intLit(5)}), Term::intLit(0)}), c2),
        Term::lt(Term::apply(g, {c2}), Term::apply(g, {Term::intLit(4)})),
    });
  }

  // f monotone in 1, anti-monotone in 2; g monotone.
  MonotonicitySpec strict() const
  {
    MonotonicitySpec m;
    m.set(f, {{0}, {1}});
    m.set(g, {{0}, {}});
    return m;
  }

  // f only monotone in 1.
  MonotonicitySpec relaxed() const
  {
    MonotonicitySpec m;
    m.set(f, {{0}, {}});
    m.set(g, {{0}, {}});
    return m;
  }
};

inline InferenceProblem
fig1Problem()
{
  return readProblemFile(sourcePath("data/fig1.problem"));
}

inline std::string
solverCommand()
{
  return defaultSolverCommand();
}

}  // namespace monoinfer::testing
