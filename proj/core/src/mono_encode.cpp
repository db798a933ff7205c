#include "monoinfer/mono_encode.hpp"

#include <algorithm>
#include <sstream>

#include "monoinfer/errors.hpp"
#include "monoinfer/smtlib.hpp"

namespace monoinfer {

namespace {

void
checkAgainstFormula(const Term& phi, const MonotonicitySpec& spec)
{
  for (const SymbolRef& f : collectSymbols(phi))
  {
    const MonotonicitySpec::Entry* e = spec.find(f->name);
    if (!e) continue;
    if (e->symbol->arity() != f->arity())
    {
      throw SortError("monotonicity entry for " + f->name
                      + " does not match its arity in the formula");
    }
    for (std::size_t i = 0; i < f->arity(); ++i)
    {
      if (!e->symbol->argSorts[i].sameKind(f->argSorts[i]))
        throw SortError("argument sorts of " + f->name + " disagree");
    }
  }
}

std::vector<Term>
varsFor(const FunctionSymbol& f, const std::string& prefix)
{
  std::vector<Term> vars;
  for (std::size_t i = 0; i < f.arity(); ++i)
    vars.push_back(Term::var(prefix + std::to_string(i + 1), f.argSorts[i]));
  return vars;
}

std::vector<BoundVar>
boundOf(const std::vector<Term>& vars)
{
  std::vector<BoundVar> out;
  for (const Term& v : vars) out.push_back(BoundVar{v.name(), v.sort()});
  return out;
}

std::vector<Term>
topConjuncts(const Term& t)
{
  if (t.kind() == TermKind::And) return t.args();
  if (t.kind() == TermKind::BoolLit && t.value() == 1) return {};
  return {t};
}

bool
literalComparison(const Term& t)
{
  return (t.kind() == TermKind::Cmp || t.kind() == TermKind::Implies)
         && t.args()[0].isLiteral() && t.args()[1].isLiteral();
}

}  // namespace

std::string
toString(Strategy strategy)
{
  switch (strategy)
  {
    case Strategy::QuantIndividual: return "quantified-individual";
    case Strategy::QuantAggregated: return "quantified-aggregated";
    case Strategy::InstEager: return "instantiated-eager";
    case Strategy::InstLazy: return "instantiated-lazy";
  }
  return "?";
}

Strategy
parseStrategy(const std::string& name)
{
  for (Strategy s : allStrategies())
  {
    if (toString(s) == name) return s;
  }
  throw UsageError("unknown encoding '" + name + "'");
}

std::vector<Strategy>
allStrategies()
{
  return {Strategy::QuantIndividual, Strategy::QuantAggregated,
          Strategy::InstEager, Strategy::InstLazy};
}

Term
EncodedProblem::formula() const
{
  std::vector<Term> all = topConjuncts(base);
  all.insert(all.end(), additions.begin(), additions.end());
  return conjoin(std::move(all));
}

std::vector<Term>
EncodedProblem::assertions() const
{
  std::vector<Term> all = topConjuncts(base);
  all.insert(all.end(), additions.begin(), additions.end());
  return all;
}

EncodedProblem
encodeQuantIndividual(const Term& phi, const MonotonicitySpec& spec)
{
  checkAgainstFormula(phi, spec);
  EncodedProblem out;
  out.strategy = Strategy::QuantIndividual;
  out.base = phi;
  for (const MonotonicitySpec::Entry* e : spec.constrained())
  {
    const FunctionSymbol& f = *e->symbol;
    std::vector<Term> xs = varsFor(f, "!x");
    for (std::size_t i = 0; i < f.arity(); ++i)
    {
      if (!e->signs.constrains(i)) continue;
      Term y = Term::var("!y", f.argSorts[i]);
      Term fx = Term::apply(e->symbol, xs);
      Term fy = Term::apply(e->symbol, substAt(xs, i, y));
      Term consequent = e->signs.monotone.count(i) ? orderingAtom(fx, fy)
                                                   : orderingAtom(fy, fx);
      std::vector<BoundVar> bound = boundOf(xs);
      bound.push_back(BoundVar{y.name(), y.sort()});
      out.additions.push_back(Term::forall(
          std::move(bound), Term::implies(orderingAtom(xs[i], y), consequent)));
    }
  }
  out.lemmaCount = out.additions.size();
  return out;
}

EncodedProblem
encodeQuantAggregated(const Term& phi, const MonotonicitySpec& spec)
{
  checkAgainstFormula(phi, spec);
  EncodedProblem out;
  out.strategy = Strategy::QuantAggregated;
  out.base = phi;
  for (const MonotonicitySpec::Entry* e : spec.constrained())
  {
    std::vector<Term> xs = varsFor(*e->symbol, "!x");
    std::vector<Term> ys = varsFor(*e->symbol, "!y");
    std::vector<BoundVar> bound = boundOf(xs);
    for (const BoundVar& b : boundOf(ys)) bound.push_back(b);
    out.additions.push_back(Term::forall(
        std::move(bound), monotonicityLemma(e->symbol, xs, ys, spec)));
  }
  out.lemmaCount = out.additions.size();
  return out;
}

Term
monotonicityLemma(const SymbolRef& symbol,
                  const ArgVector& lhs,
                  const ArgVector& rhs,
                  const MonotonicitySpec& spec)
{
  if (lhs.size() != symbol->arity() || rhs.size() != symbol->arity())
  {
    throw SortError("lemma for " + symbol->name
                    + " with an argument vector of the wrong length");
  }
  ArgumentSigns signs = spec.signsOf(symbol->name);
  std::vector<Term> antecedent;
  for (std::size_t i = 0; i < symbol->arity(); ++i)
  {
    if (signs.monotone.count(i))
      antecedent.push_back(orderingAtom(lhs[i], rhs[i]));
    else if (signs.antitone.count(i))
      antecedent.push_back(orderingAtom(rhs[i], lhs[i]));
    else
      antecedent.push_back(Term::eq(lhs[i], rhs[i]));
  }
  return Term::implies(conjoin(std::move(antecedent)),
                       orderingAtom(Term::apply(symbol, lhs),
                                    Term::apply(symbol, rhs)));
}

std::optional<Term>
foldLemma(const Term& lemma)
{
  if (lemma.kind() != TermKind::Implies) return lemma;
  std::vector<Term> kept;
  bool changed = false;
  for (const Term& c : topConjuncts(lemma.args()[0]))
  {
    if (literalComparison(c))
    {
      if (!holds(c, TermValuation{})) return std::nullopt;
      changed = true;
      continue;
    }
    kept.push_back(c);
  }
  if (!changed) return lemma;
  if (kept.empty()) return lemma.args()[1];
  return Term::implies(conjoin(std::move(kept)), lemma.args()[1]);
}

std::vector<LemmaInstance>
lemmaCandidates(const Term& phi,
                const MonotonicitySpec& spec,
                const EncodeOptions& options)
{
  checkAgainstFormula(phi, spec);
  std::vector<LemmaInstance> out;
  for (const MonotonicitySpec::Entry* e : spec.constrained())
  {
    std::vector<ArgVector> apps = applicationsOf(phi, *e->symbol);
    for (std::size_t i = 0; i < apps.size(); ++i)
    {
      for (std::size_t j = 0; j < apps.size(); ++j)
      {
        if (i == j) continue;
        LemmaInstance inst;
        inst.symbol = e->symbol;
        inst.lhs = apps[i];
        inst.rhs = apps[j];
        inst.lemma = monotonicityLemma(e->symbol, apps[i], apps[j], spec);
        inst.asserted =
            options.foldConstants ? foldLemma(inst.lemma) : inst.lemma;
        out.push_back(std::move(inst));
      }
    }
  }
  return out;
}

EncodedProblem
encodeEager(const Term& phi,
            const MonotonicitySpec& spec,
            const EncodeOptions& options)
{
  if (hasQuantifiers(phi))
    throw UsageError("eager instantiation needs a quantifier-free formula");
  EncodedProblem out;
  out.strategy = Strategy::InstEager;
  out.base = phi;
  std::vector<LemmaInstance> candidates = lemmaCandidates(phi, spec, options);
  out.lemmaCount = candidates.size();
  for (const LemmaInstance& c : candidates)
  {
    if (c.asserted) out.additions.push_back(*c.asserted);
  }
  return out;
}

std::vector<Term>
violatedLemmas(const std::vector<LemmaInstance>& candidates,
               const TermValuation& valuation)
{
  std::vector<Term> out;
  for (const LemmaInstance& c : candidates)
  {
    if (!c.asserted) continue;
    if (!holds(c.lemma, valuation)) out.push_back(*c.asserted);
  }
  return out;
}

std::vector<Term>
violatedLemmas(const Term& phi,
               const MonotonicitySpec& spec,
               const TermValuation& valuation)
{
  return violatedLemmas(lemmaCandidates(phi, spec), valuation);
}

std::vector<Term>
valuationTerms(const Term& phi)
{
  std::vector<Term> out;
  for (const Term& t : subterms(phi))
  {
    if ((t.kind() == TermKind::Const || t.isApply()) && isGround(t))
      out.push_back(t);
  }
  return out;
}

Model
modelFromValuation(const Term& phi, const TermValuation& valuation)
{
  Model model;
  std::map<std::string, FunctionTable> tables;
  for (const Term& t : valuationTerms(phi))
  {
    auto it = valuation.find(t);
    if (it == valuation.end())
      throw EvaluationError("no value for " + t.toString());
    if (t.kind() == TermKind::Const)
    {
      model.setConstant(t.name(), it->second);
      continue;
    }
    std::vector<Value> args;
    for (const Term& a : t.args()) args.push_back(evaluate(a, valuation));
    FunctionTable& table = tables[t.symbol()->name];
    table.symbol = t.symbol();
    table.points.insert_or_assign(std::move(args), it->second);
  }
  for (auto& [name, table] : tables)
  {
    Value lo = table.points.begin()->second;
    for (const auto& [args, v] : table.points) lo = std::min(lo, v);
    table.defaultValue = lo;
    model.setTable(std::move(table));
  }
  return model;
}

SolveOutcome
solveEncoded(const EncodedProblem& encoded, SolverSession& session)
{
  SolveOutcome out;
  out.lemmaCount = encoded.lemmaCount;
  std::size_t before = session.checkSatCalls();
  try
  {
    for (const Term& a : encoded.assertions()) session.assertFormula(a);
    CheckResult r = session.checkSat();
    if (r == CheckResult::Unsat)
      out.verdict = SolverVerdict::unsat();
    else if (r == CheckResult::Unknown)
      out.verdict = SolverVerdict::unknown(session.unknownReason());
    else
    {
      std::vector<Term> terms = valuationTerms(encoded.base);
      std::vector<Value> values = session.valueOf(terms);
      TermValuation valuation;
      for (std::size_t i = 0; i < terms.size(); ++i)
        valuation.emplace(terms[i], values[i]);
      out.verdict = SolverVerdict::sat(modelFromValuation(encoded.base, valuation));
    }
  }
  catch (const SolverTimeout&)
  {
    out.verdict = SolverVerdict::unknown("timeout");
  }
  catch (const SolverError& e)
  {
    out.verdict = SolverVerdict::unknown(e.what());
    out.failure = e.what();
  }
  catch (const EvaluationError& e)
  {
    out.verdict = SolverVerdict::unknown(e.what());
    out.failure = e.what();
  }
  out.checkSatCalls = session.checkSatCalls() - before;
  out.iterations = out.checkSatCalls;
  return out;
}

SolveOutcome
solveLazy(const Term& phi,
          const MonotonicitySpec& spec,
          SolverSession& session,
          const EncodeOptions& options)
{
  if (hasQuantifiers(phi))
    throw UsageError("lazy instantiation needs a quantifier-free formula");
  SolveOutcome out;
  std::vector<LemmaInstance> candidates = lemmaCandidates(phi, spec, options);
  out.lemmaCount = candidates.size();
  std::vector<Term> terms = valuationTerms(phi);
  std::size_t before = session.checkSatCalls();
  try
  {
    for (const Term& a : topConjuncts(phi)) session.assertFormula(a);
    for (;;)
    {
      ++out.iterations;
      CheckResult r = session.checkSat();
      if (r == CheckResult::Unsat)
      {
        out.verdict = SolverVerdict::unsat();
        break;
      }
      if (r == CheckResult::Unknown)
      {
        out.verdict = SolverVerdict::unknown(session.unknownReason());
        break;
      }
      std::vector<Value> values = session.valueOf(terms);
      TermValuation valuation;
      for (std::size_t i = 0; i < terms.size(); ++i)
        valuation.emplace(terms[i], values[i]);
      std::vector<Term> violated = violatedLemmas(candidates, valuation);
      if (violated.empty())
      {
        out.verdict = SolverVerdict::sat(modelFromValuation(phi, valuation));
        break;
      }
      for (const Term& lemma : violated)
      {
        session.assertFormula(lemma);
        out.assertedLemmas.push_back(lemma);
      }
    }
  }
  catch (const SolverTimeout&)
  {
    out.verdict = SolverVerdict::unknown("timeout");
  }
  catch (const SolverError& e)
  {
    out.verdict = SolverVerdict::unknown(e.what());
    out.failure = e.what();
  }
  catch (const EvaluationError& e)
  {
    out.verdict = SolverVerdict::unknown(e.what());
    out.failure = e.what();
  }
  out.checkSatCalls = session.checkSatCalls() - before;
  return out;
}

SolveOutcome
solveWith(Strategy strategy,
          const Term& phi,
          const MonotonicitySpec& spec,
          SolverSession& session,
          const EncodeOptions& options)
{
  switch (strategy)
  {
    case Strategy::QuantIndividual:
      return solveEncoded(encodeQuantIndividual(phi, spec), session);
    case Strategy::QuantAggregated:
      return solveEncoded(encodeQuantAggregated(phi, spec), session);
    case Strategy::InstEager:
      return solveEncoded(encodeEager(phi, spec, options), session);
    case Strategy::InstLazy: return solveLazy(phi, spec, session, options);
  }
  throw UsageError("unknown strategy");
}

bool
dominatedBy(const std::vector<Value>& p,
            const std::vector<Value>& q,
            const ArgumentSigns& signs)
{
  if (p.size() != q.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    if (signs.monotone.count(i))
    {
      if (p[i] > q[i]) return false;
    }
    else if (signs.antitone.count(i))
    {
      if (q[i] > p[i]) return false;
    }
    else if (p[i] != q[i])
      return false;
  }
  return true;
}

MonotoneModel::MonotoneModel(Model base, MonotonicitySpec spec)
    : d_base(std::move(base)), d_spec(std::move(spec))
{
  for (const auto& [name, table] : d_base.functions())
  {
    if (table.points.empty())
    {
      auto range = table.symbol->resultSort.range();
      d_defaults[name] = range ? range->lo : 0;
      continue;
    }
    Value lo = table.points.begin()->second;
    for (const auto& [args, v] : table.points) lo = std::min(lo, v);
    d_defaults[name] = lo;
  }
}

Value
MonotoneModel::defaultValue(const std::string& symbolName) const
{
  auto it = d_defaults.find(symbolName);
  return it == d_defaults.end() ? 0 : it->second;
}

Value
MonotoneModel::constantValue(const Term& constant) const
{
  return d_base.constantValue(constant);
}

Value
MonotoneModel::applyFunction(const FunctionSymbol& symbol,
                             const std::vector<Value>& args) const
{
  const FunctionTable* table = d_base.table(symbol.name);
  if (!table)
  {
    auto range = symbol.resultSort.range();
    return range ? range->lo : 0;
  }
  ArgumentSigns signs = d_spec.signsOf(symbol.name);
  std::optional<Value> best;
  for (const auto& [point, value] : table->points)
  {
    if (dominatedBy(point, args, signs) && (!best || value > *best))
      best = value;
  }
  return best ? *best : defaultValue(symbol.name);
}

std::optional<std::string>
MonotoneModel::invariantViolation() const
{
  for (const auto& [name, table] : d_base.functions())
  {
    ArgumentSigns signs = d_spec.signsOf(name);
    for (const auto& [p, vp] : table.points)
    {
      for (const auto& [q, vq] : table.points)
      {
        if (vp > vq && dominatedBy(p, q, signs))
        {
          std::ostringstream os;
          os << name << " decreases from (";
          for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
          os << ")->" << vp << " to (";
          for (std::size_t i = 0; i < q.size(); ++i) os << (i ? "," : "") << q[i];
          os << ")->" << vq;
          return os.str();
        }
      }
    }
  }
  return std::nullopt;
}

MonotoneModel
monotonizeModel(const Model& base, const MonotonicitySpec& spec)
{
  MonotoneModel out(base, spec);
  if (auto violation = out.invariantViolation())
  {
    throw UsageError("table violates a monotonicity lemma: " + *violation);
  }
  return out;
}

}  // namespace monoinfer
