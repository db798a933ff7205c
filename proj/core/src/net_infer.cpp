#include "monoinfer/net_infer.hpp"

#include <algorithm>

#include "monoinfer/errors.hpp"
#include "monoinfer/mono_encode.hpp"

namespace monoinfer {

namespace {

void
flattenInto(const Term& t, std::vector<Term>& out)
{
  if (t.kind() == TermKind::And)
  {
    for (const Term& a : t.args()) flattenInto(a, out);
    return;
  }
  if (t.kind() == TermKind::BoolLit && t.value() == 1) return;
  out.push_back(t);
}

}  // namespace

std::vector<SymbolRef>
buildSignature(const InferenceProblem& problem)
{
  std::vector<SymbolRef> out;
  for (std::size_t v = 0; v < problem.variables.size(); ++v)
  {
    std::vector<Sort> args;
    for (std::size_t r : problem.regulatorsOf(v))
      args.push_back(problem.variables[r].domain);
    out.push_back(makeSymbol("f_" + problem.variables[v].name, std::move(args),
                             problem.variables[v].domain));
  }
  return out;
}

MonotonicitySpec
buildMonotonicitySpec(const InferenceProblem& problem,
                      const std::vector<SymbolRef>& symbols)
{
  MonotonicitySpec spec;
  for (std::size_t v = 0; v < problem.variables.size(); ++v)
  {
    ArgumentSigns signs;
    std::vector<std::size_t> regs = problem.regulatorsOf(v);
    for (std::size_t i = 0; i < regs.size(); ++i)
    {
      RegulationSign sign = problem.regulation(regs[i], v)->sign;
      if (sign == RegulationSign::Monotone) signs.monotone.insert(i);
      if (sign == RegulationSign::AntiMonotone) signs.antitone.insert(i);
    }
    spec.set(symbols[v], std::move(signs));
  }
  return spec;
}

Term
essentialityConstraint(const InferenceProblem& problem,
                       const std::vector<SymbolRef>& symbols,
                       std::size_t target,
                       std::size_t source,
                       const NetEncodeOptions& options)
{
  const Regulation* reg = problem.regulation(source, target);
  if (!reg || !reg->essential)
  {
    throw UsageError("no essential regulation " + problem.variables.at(source).name
                     + " -> " + problem.variables.at(target).name);
  }
  std::vector<std::size_t> regs = problem.regulatorsOf(target);
  std::size_t k = std::find(regs.begin(), regs.end(), source) - regs.begin();
  const Sort& sourceSort = problem.variables[source].domain;

  std::vector<BoundVar> bound;
  Term x = Term::boolLit(true);
  Term y = Term::boolLit(false);
  if (!(options.simplify && sourceSort.isBool()))
  {
    x = Term::var("x", sourceSort);
    y = Term::var("y", sourceSort);
    bound.push_back({"x", sourceSort});
    bound.push_back({"y", sourceSort});
  }
  ArgVector xs;
  for (std::size_t j = 0; j < regs.size(); ++j)
  {
    if (j == k)
    {
      xs.push_back(x);
      continue;
    }
    std::string name = "z" + std::to_string(j + 1);
    const Sort& s = problem.variables[regs[j]].domain;
    bound.push_back({name, s});
    xs.push_back(Term::var(name, s));
  }
  ArgVector ys = substAt(xs, k, y);
  return Term::exists(std::move(bound),
                      Term::ne(Term::apply(symbols[target], xs),
                               Term::apply(symbols[target], ys)));
}

Term
fixedPointConstraint(const InferenceProblem& problem,
                     const std::vector<SymbolRef>& symbols,
                     const FixedPointObservation& observation,
                     const NetEncodeOptions& options)
{
  const std::size_t n = problem.variables.size();
  for (const auto& [v, d] : observation.values)
  {
    if (v >= n) throw SortError("observation names an unknown variable");
    auto range = problem.variables[v].domain.range();
    if (range && !range->contains(d))
    {
      throw SortError("observed value " + std::to_string(d) + " of "
                      + problem.variables[v].name + " is outside its domain");
    }
  }

  auto observed = [&](std::size_t v) -> std::optional<Value> {
    auto it = observation.values.find(v);
    if (it == observation.values.end()) return std::nullopt;
    return it->second;
  };
  auto stateVar = [&](std::size_t v) {
    return Term::var("x" + std::to_string(v + 1), problem.variables[v].domain);
  };

  std::vector<BoundVar> bound;
  std::vector<Term> parts;
  for (std::size_t v = 0; v < n; ++v)
  {
    if (!options.simplify || !observed(v))
      bound.push_back({"x" + std::to_string(v + 1), problem.variables[v].domain});
  }
  for (std::size_t v = 0; v < n; ++v)
  {
    ArgVector args;
    for (std::size_t r : problem.regulatorsOf(v))
    {
      auto d = observed(r);
      if (options.simplify && d)
        args.push_back(Term::literal(*d, problem.variables[r].domain));
      else
        args.push_back(stateVar(r));
    }
    Term app = Term::apply(symbols[v], std::move(args));
    auto d = observed(v);
    if (options.simplify && d)
      parts.push_back(Term::eq(app, Term::literal(*d, problem.variables[v].domain)));
    else
      parts.push_back(Term::eq(stateVar(v), app));
  }
  if (!options.simplify)
  {
    for (const auto& [v, d] : observation.values)
      parts.push_back(Term::eq(stateVar(v), Term::literal(d, problem.variables[v].domain)));
  }
  return Term::exists(std::move(bound), conjoin(std::move(parts)));
}

Term
boundsConstraints(const Term& phi)
{
  std::vector<Term> out;
  for (const Term& t : subterms(phi))
  {
    if (t.kind() != TermKind::Const && !t.isApply()) continue;
    if (!t.sort().isInt() || !t.sort().bounds()) continue;
    const Bounds& b = *t.sort().bounds();
    out.push_back(Term::le(Term::intLit(b.lo), t));
    out.push_back(Term::le(t, Term::intLit(b.hi)));
  }
  return conjoin(std::move(out));
}

NetworkEncoding
encodeInference(const InferenceProblem& problem, const NetEncodeOptions& options)
{
  problem.validate();
  NetworkEncoding enc;
  enc.symbols = buildSignature(problem);
  enc.spec = buildMonotonicitySpec(problem, enc.symbols);

  std::vector<Term> constraints;
  for (std::size_t v = 0; v < problem.variables.size(); ++v)
  {
    for (std::size_t r : problem.regulatorsOf(v))
    {
      if (problem.regulation(r, v)->essential)
        constraints.push_back(essentialityConstraint(problem, enc.symbols, v, r, options));
    }
  }
  for (const FixedPointObservation& f : problem.observations)
    constraints.push_back(fixedPointConstraint(problem, enc.symbols, f, options));

  NameSupply names;
  std::vector<Term> conjuncts;
  for (const Term& c : constraints)
    flattenInto(skolemize(c, names, &enc.skolems), conjuncts);
  Term body = conjoin(conjuncts);
  flattenInto(boundsConstraints(body), conjuncts);
  enc.formula = conjoin(std::move(conjuncts));
  return enc;
}

std::vector<UpdateFunctionTable>
decodeSolution(const Model& model,
               const InferenceProblem& problem,
               const NetworkEncoding& encoding)
{
  if (!problem.bounded())
    throw UsageError("cannot tabulate update functions over an unbounded domain");
  MonotoneModel completed = monotonizeModel(model, encoding.spec);
  std::vector<UpdateFunctionTable> out;
  for (std::size_t v = 0; v < problem.variables.size(); ++v)
  {
    UpdateFunctionTable t;
    t.variable = v;
    t.regulators = problem.regulatorsOf(v);
    std::vector<Sort> sorts;
    for (std::size_t r : t.regulators) sorts.push_back(problem.variables[r].domain);
    for (auto& row : gridOf(sorts))
    {
      Value out = completed.applyFunction(*encoding.symbols[v], row);
      t.rows.emplace(std::move(row), out);
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace monoinfer
