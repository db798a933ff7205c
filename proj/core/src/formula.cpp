#include "monoinfer/formula.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "monoinfer/errors.hpp"

namespace monoinfer {

namespace {

/// Same node kind with new children.
Term
rebuild(const Term& t, std::vector<Term> args)
{
  switch (t.kind())
  {
    case TermKind::IntLit:
    case TermKind::BoolLit:
    case TermKind::Const:
    case TermKind::Var: return t;
    case TermKind::Apply: return Term::apply(t.symbol(), std::move(args));
    case TermKind::Add: return Term::add(std::move(args));
    case TermKind::Sub: return Term::sub(args[0], args[1]);
    case TermKind::Neg: return Term::neg(args[0]);
    case TermKind::Cmp: return Term::cmp(t.op(), args[0], args[1]);
    case TermKind::Not: return Term::lnot(args[0]);
    case TermKind::And: return Term::land(std::move(args));
    case TermKind::Or: return Term::lor(std::move(args));
    case TermKind::Implies: return Term::implies(args[0], args[1]);
    case TermKind::Forall: return Term::forall(t.bound(), args[0]);
    case TermKind::Exists: return Term::exists(t.bound(), args[0]);
  }
  return t;
}

template <typename Visit>
void
preorder(const Term& t, TermSet& seen, Visit&& visit)
{
  if (!seen.insert(t).second) return;
  visit(t);
  for (const Term& a : t.args()) preorder(a, seen, visit);
}

void
collectFree(const Term& t,
            std::vector<std::string>& bound,
            std::set<std::string>& seen,
            std::vector<std::string>& out)
{
  if (t.kind() == TermKind::Var)
  {
    if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()
        && seen.insert(t.name()).second)
    {
      out.push_back(t.name());
    }
    return;
  }
  std::size_t mark = bound.size();
  for (const BoundVar& b : t.bound()) bound.push_back(b.name);
  for (const Term& a : t.args()) collectFree(a, bound, seen, out);
  bound.resize(mark);
}

Term
substituteImpl(const Term& t, const std::map<std::string, Term>& mapping)
{
  if (t.kind() == TermKind::Var)
  {
    auto it = mapping.find(t.name());
    if (it == mapping.end()) return t;
    if (!it->second.sort().sameKind(t.sort()))
      throw SortError("substitution changes the sort of " + t.name());
    return it->second;
  }
  if (t.args().empty()) return t;
  const std::map<std::string, Term>* active = &mapping;
  std::map<std::string, Term> shadowed;
  if (t.isQuantifier())
  {
    shadowed = mapping;
    for (const BoundVar& b : t.bound()) shadowed.erase(b.name);
    active = &shadowed;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const Term& a : t.args())
  {
    args.push_back(substituteImpl(a, *active));
    changed = changed || args.back() != a;
  }
  return changed ? rebuild(t, std::move(args)) : t;
}

enum class Polarity
{
  Positive,
  Other
};

Term
skolemizeImpl(const Term& t,
              Polarity polarity,
              bool underForall,
              NameSupply& names,
              std::vector<Term>* introduced)
{
  switch (t.kind())
  {
    case TermKind::Exists:
    {
      if (polarity != Polarity::Positive || underForall)
      {
        throw SortError("existential quantifier in a non-positive position: "
                        + t.toString());
      }
      std::vector<std::pair<std::string, Term>> mapping;
      for (const BoundVar& b : t.bound())
      {
        Term k = Term::constant(names.fresh(), b.sort);
        if (introduced) introduced->push_back(k);
        mapping.emplace_back(b.name, k);
      }
      return skolemizeImpl(substitute(t.body(), mapping), polarity,
                           underForall, names, introduced);
    }
    case TermKind::Forall:
    {
      Term body =
          skolemizeImpl(t.body(), polarity, true, names, introduced);
      return body == t.body() ? t : Term::forall(t.bound(), body);
    }
    case TermKind::And:
    case TermKind::Or:
    case TermKind::Implies:
    case TermKind::Not:
    case TermKind::Cmp:
    {
      std::vector<Term> args;
      bool changed = false;
      for (std::size_t i = 0; i < t.args().size(); ++i)
      {
        Polarity p = polarity;
        if (t.kind() == TermKind::Not || t.kind() == TermKind::Cmp
            || (t.kind() == TermKind::Implies && i == 0))
        {
          p = Polarity::Other;
        }
        args.push_back(
            skolemizeImpl(t.args()[i], p, underForall, names, introduced));
        changed = changed || args.back() != t.args()[i];
      }
      return changed ? rebuild(t, std::move(args)) : t;
    }
    default:
      if (hasQuantifiers(t))
        throw SortError("quantifier nested inside a term: " + t.toString());
      return t;
  }
}

}  // namespace

ArgVector
substAt(const ArgVector& v, std::size_t i, const Term& b)
{
  if (i >= v.size())
  {
    throw UsageError("position " + std::to_string(i)
                     + " out of range for argument vector of length "
                     + std::to_string(v.size()));
  }
  if (!v[i].sort().sameKind(b.sort()))
    throw SortError("substituted term has a different sort: " + b.toString());
  ArgVector out = v;
  out[i] = b;
  return out;
}

std::vector<Term>
subterms(const Term& phi)
{
  std::vector<Term> out;
  TermSet seen;
  preorder(phi, seen, [&](const Term& t) { out.push_back(t); });
  return out;
}

std::vector<ArgVector>
applicationsOf(const Term& phi, const FunctionSymbol& symbol)
{
  std::vector<ArgVector> out;
  TermSet seen;
  preorder(phi, seen, [&](const Term& t) {
    if (t.isApply() && t.symbol()->name == symbol.name
        && t.args().size() == symbol.arity())
    {
      out.push_back(t.args());
    }
  });
  return out;
}

std::vector<SymbolRef>
collectSymbols(const Term& phi)
{
  std::vector<SymbolRef> out;
  std::set<std::string> names;
  TermSet seen;
  preorder(phi, seen, [&](const Term& t) {
    if (t.isApply() && names.insert(t.symbol()->name).second)
      out.push_back(t.symbol());
  });
  return out;
}

std::vector<Term>
collectConstants(const Term& phi)
{
  std::vector<Term> out;
  TermSet seen;
  preorder(phi, seen, [&](const Term& t) {
    if (t.kind() == TermKind::Const) out.push_back(t);
  });
  return out;
}

std::vector<std::string>
freeVariables(const Term& phi)
{
  std::vector<std::string> bound;
  std::set<std::string> seen;
  std::vector<std::string> out;
  collectFree(phi, bound, seen, out);
  return out;
}

bool
isGround(const Term& phi)
{
  if (phi.kind() == TermKind::Var || phi.isQuantifier()) return false;
  return std::all_of(phi.args().begin(), phi.args().end(), isGround);
}

bool
hasQuantifiers(const Term& phi)
{
  if (phi.isQuantifier()) return true;
  return std::any_of(phi.args().begin(), phi.args().end(), hasQuantifiers);
}

Term
substitute(const Term& phi,
           const std::vector<std::pair<std::string, Term>>& mapping)
{
  std::map<std::string, Term> m;
  for (const auto& [name, term] : mapping) m.insert_or_assign(name, term);
  return substituteImpl(phi, m);
}

Term
orderingAtom(const Term& lhs, const Term& rhs)
{
  if (!lhs.sort().sameKind(rhs.sort()))
  {
    throw SortError("ordering between different sorts: " + lhs.toString()
                    + " and " + rhs.toString());
  }
  return lhs.sort().isBool() ? Term::implies(lhs, rhs) : Term::le(lhs, rhs);
}

NameSupply::NameSupply(std::string prefix) : d_prefix(std::move(prefix))
{
  if (!isReservedName(d_prefix))
    throw UsageError("fresh-name prefix must start with '!': " + d_prefix);
}

std::string
NameSupply::fresh()
{
  return d_prefix + std::to_string(d_next.fetch_add(1));
}

Term
skolemize(const Term& phi, NameSupply& names, std::vector<Term>* introduced)
{
  return skolemizeImpl(phi, Polarity::Positive, false, names, introduced);
}

}  // namespace monoinfer
