#include "monoinfer/solver.hpp"

#include "monoinfer/errors.hpp"
#include "monoinfer/formula.hpp"

namespace monoinfer {

const char*
toString(CheckResult result)
{
  switch (result)
  {
    case CheckResult::Sat: return "sat";
    case CheckResult::Unsat: return "unsat";
    case CheckResult::Unknown: return "unknown";
  }
  return "unknown";
}

SolverVerdict
SolverVerdict::sat(Model model)
{
  return SolverVerdict(Kind::Sat, std::move(model), "");
}

SolverVerdict
SolverVerdict::unsat()
{
  return SolverVerdict(Kind::Unsat, std::nullopt, "");
}

SolverVerdict
SolverVerdict::unknown(std::string reason)
{
  return SolverVerdict(Kind::Unknown, std::nullopt, std::move(reason));
}

const Model&
SolverVerdict::model() const
{
  if (!d_model) throw UsageError("verdict " + name() + " carries no model");
  return *d_model;
}

std::string
SolverVerdict::name() const
{
  switch (d_kind)
  {
    case Kind::Sat: return "sat";
    case Kind::Unsat: return "unsat";
    case Kind::Unknown: return "unknown";
  }
  return "unknown";
}

void
Signature::extend(const Term& formula)
{
  for (const SymbolRef& f : collectSymbols(formula))
  {
    auto [it, inserted] =
        d_names.try_emplace(f->name, NameInfo{true, f->arity(), f->resultSort.kind()});
    if (inserted)
    {
      functions.push_back(f);
      continue;
    }
    if (!it->second.function || it->second.arity != f->arity())
      throw SortError("name " + f->name + " used with two signatures");
  }
  for (const Term& c : collectConstants(formula))
  {
    auto [it, inserted] =
        d_names.try_emplace(c.name(), NameInfo{false, 0, c.sort().kind()});
    if (inserted)
    {
      constants.push_back(c);
      continue;
    }
    if (it->second.function || it->second.sort != c.sort().kind())
      throw SortError("name " + c.name() + " used with two signatures");
  }
}

void
SolverSession::requireOpen() const
{
  if (d_state == State::Disposed) throw UsageError("session already disposed");
}

void
SolverSession::requireSat(const char* what) const
{
  requireOpen();
  if (d_state != State::Sat)
  {
    throw UsageError(std::string(what)
                     + " is only allowed directly after a sat answer");
  }
}

void
SolverSession::declare(const SymbolRef& symbol)
{
  requireOpen();
  if (!d_names.insert(symbol->name).second) return;
  d_declared.functions.push_back(symbol);
  doDeclareFunction(*symbol);
}

void
SolverSession::declareConstant(const Term& constant)
{
  requireOpen();
  if (constant.kind() != TermKind::Const)
    throw UsageError("declareConstant expects a constant");
  if (!d_names.insert(constant.name()).second) return;
  d_declared.constants.push_back(constant);
  doDeclareConstant(constant);
}

void
SolverSession::assertFormula(const Term& formula)
{
  requireOpen();
  if (!formula.sort().isBool())
    throw SortError("asserted term is not Boolean: " + formula.toString());
  if (!freeVariables(formula).empty())
    throw SortError("asserted formula has free variables: " + formula.toString());
  Signature sig;
  sig.extend(formula);
  for (const SymbolRef& f : sig.functions) declare(f);
  for (const Term& c : sig.constants) declareConstant(c);
  doAssert(formula);
  ++d_assertions;
  if (d_state != State::Disposed) d_state = State::Open;
}

CheckResult
SolverSession::checkSat()
{
  requireOpen();
  ++d_checks;
  std::string reason;
  CheckResult r = doCheck(reason);
  d_state = (r == CheckResult::Sat) ? State::Sat : State::NotSat;
  d_unknownReason = (r == CheckResult::Unknown) ? reason : "";
  return r;
}

std::vector<Value>
SolverSession::valueOf(const std::vector<Term>& terms)
{
  requireSat("valueOf");
  if (terms.empty()) return {};
  for (const Term& t : terms)
  {
    if (!isGround(t))
      throw UsageError("valueOf expects ground terms: " + t.toString());
  }
  std::vector<Value> values = doValues(terms);
  if (values.size() != terms.size())
    throw SolverError("solver returned a wrong number of values");
  return values;
}

Model
SolverSession::extractModel()
{
  requireSat("extractModel");
  return doModel(d_declared);
}

void
SolverSession::setTimeLimit(std::chrono::milliseconds limit)
{
  requireOpen();
  doSetTimeLimit(limit);
}

void
SolverSession::dispose()
{
  if (d_state == State::Disposed) return;
  d_state = State::Disposed;
  doDispose();
}

}  // namespace monoinfer
