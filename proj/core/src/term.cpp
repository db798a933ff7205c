#include "monoinfer/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include "monoinfer/errors.hpp"

namespace monoinfer {

namespace {

std::size_t
mix(std::size_t seed, std::size_t value)
{
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool
plainSymbolChar(char c)
{
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

void
requireBool(const Term& t, const char* where)
{
  if (!t.sort().isBool())
  {
    throw SortError(std::string(where) + " expects a Boolean operand, got "
                    + t.toString());
  }
}

void
requireInt(const Term& t, const char* where)
{
  if (!t.sort().isInt())
  {
    throw SortError(std::string(where) + " expects an Integer operand, got "
                    + t.toString());
  }
}

bool
bindsAny(const Term& t, const std::unordered_set<std::string>& names)
{
  if (t.isQuantifier())
  {
    for (const BoundVar& b : t.bound())
    {
      if (names.count(b.name)) return true;
    }
  }
  for (const Term& a : t.args())
  {
    if (bindsAny(a, names)) return true;
  }
  return false;
}

const char*
cmpName(CmpOp op)
{
  switch (op)
  {
    case CmpOp::Le: return "<=";
    case CmpOp::Lt: return "<";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "distinct";
  }
  return "?";
}

void
print(std::ostream& os, const Term& t)
{
  switch (t.kind())
  {
    case TermKind::IntLit:
      if (t.value() < 0)
        os << "(- " << -t.value() << ")";
      else
        os << t.value();
      return;
    case TermKind::BoolLit: os << (t.value() ? "true" : "false"); return;
    case TermKind::Const:
    case TermKind::Var: os << smtSymbol(t.name()); return;
    case TermKind::Apply:
      if (t.args().empty())
      {
        os << smtSymbol(t.symbol()->name);
        return;
      }
      os << "(" << smtSymbol(t.symbol()->name);
      break;
    case TermKind::Add: os << "(+"; break;
    case TermKind::Sub:
    case TermKind::Neg: os << "(-"; break;
    case TermKind::Cmp: os << "(" << cmpName(t.op()); break;
    case TermKind::Not: os << "(not"; break;
    case TermKind::And:
      if (t.args().empty())
      {
        os << "true";
        return;
      }
      os << "(and";
      break;
    case TermKind::Or:
      if (t.args().empty())
      {
        os << "false";
        return;
      }
      os << "(or";
      break;
    case TermKind::Implies: os << "(=>"; break;
    case TermKind::Forall:
    case TermKind::Exists:
      os << (t.kind() == TermKind::Forall ? "(forall (" : "(exists (");
      for (std::size_t i = 0; i < t.bound().size(); ++i)
      {
        const BoundVar& b = t.bound()[i];
        os << (i ? " " : "") << "(" << smtSymbol(b.name) << " "
           << (b.sort.isBool() ? "Bool" : "Int") << ")";
      }
      os << ") ";
      print(os, t.body());
      os << ")";
      return;
  }
  for (const Term& a : t.args())
  {
    os << " ";
    print(os, a);
  }
  os << ")";
}

}  // namespace

Sort
Sort::bounded(Value lo, Value hi)
{
  if (lo > hi)
  {
    throw SortError("empty integer interval " + std::to_string(lo) + ".."
                    + std::to_string(hi));
  }
  return Sort(SortKind::Integer, Bounds{lo, hi});
}

std::optional<Bounds>
Sort::range() const
{
  if (isBool()) return Bounds{0, 1};
  return d_bounds;
}

std::ostream&
operator<<(std::ostream& os, const Sort& sort)
{
  if (sort.isBool()) return os << "Bool";
  os << "Int";
  if (sort.bounds())
    os << "[" << sort.bounds()->lo << ".." << sort.bounds()->hi << "]";
  return os;
}

SymbolRef
makeSymbol(std::string name,
           std::vector<Sort> argSorts,
           Sort resultSort,
           bool uninterpreted)
{
  if (name.empty()) throw SortError("function symbol without a name");
  return std::make_shared<const FunctionSymbol>(FunctionSymbol{
      std::move(name), std::move(argSorts), resultSort, uninterpreted});
}

Term
Term::make(Node node)
{
  std::size_t h = static_cast<std::size_t>(node.kind) * 1000003u;
  h = mix(h, std::hash<Value>{}(node.value));
  h = mix(h, static_cast<std::size_t>(node.op));
  h = mix(h, std::hash<std::string>{}(node.name));
  if (node.symbol) h = mix(h, std::hash<std::string>{}(node.symbol->name));
  for (const Term& a : node.args) h = mix(h, a.hash());
  for (const BoundVar& b : node.bound)
  {
    h = mix(h, std::hash<std::string>{}(b.name));
    h = mix(h, static_cast<std::size_t>(b.sort.kind()));
  }
  node.hash = h;
  return Term(std::make_shared<const Node>(std::move(node)));
}

Term
Term::intLit(Value value)
{
  Node n;
  n.kind = TermKind::IntLit;
  n.sort = Sort::integer();
  n.value = value;
  return make(std::move(n));
}

Term
Term::boolLit(bool value)
{
  Node n;
  n.kind = TermKind::BoolLit;
  n.sort = Sort::boolean();
  n.value = value ? 1 : 0;
  return make(std::move(n));
}

Term
Term::literal(Value value, const Sort& sort)
{
  if (sort.isBool())
  {
    if (value != 0 && value != 1)
      throw SortError("Boolean literal out of range: " + std::to_string(value));
    return boolLit(value != 0);
  }
  return intLit(value);
}

Term
Term::constant(std::string name, Sort sort)
{
  if (name.empty()) throw SortError("constant without a name");
  Node n;
  n.kind = TermKind::Const;
  n.sort = sort;
  n.name = std::move(name);
  return make(std::move(n));
}

Term
Term::var(std::string name, Sort sort)
{
  if (name.empty()) throw SortError("variable without a name");
  Node n;
  n.kind = TermKind::Var;
  n.sort = sort;
  n.name = std::move(name);
  return make(std::move(n));
}

Term
Term::apply(SymbolRef symbol, std::vector<Term> args)
{
  if (!symbol) throw SortError("application of a null symbol");
  if (args.size() != symbol->arity())
  {
    throw SortError("symbol " + symbol->name + " expects "
                    + std::to_string(symbol->arity()) + " arguments, got "
                    + std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i)
  {
    if (!args[i].sort().sameKind(symbol->argSorts[i]))
    {
      throw SortError("argument " + std::to_string(i + 1) + " of "
                      + symbol->name + " has the wrong sort: "
                      + args[i].toString());
    }
  }
  Node n;
  n.kind = TermKind::Apply;
  n.sort = symbol->resultSort;
  n.symbol = std::move(symbol);
  n.args = std::move(args);
  return make(std::move(n));
}

Term
Term::add(std::vector<Term> args)
{
  if (args.size() < 2) throw SortError("addition needs at least two operands");
  for (const Term& a : args) requireInt(a, "+");
  Node n;
  n.kind = TermKind::Add;
  n.sort = Sort::integer();
  n.args = std::move(args);
  return make(std::move(n));
}

Term
Term::sub(Term lhs, Term rhs)
{
  requireInt(lhs, "-");
  requireInt(rhs, "-");
  Node n;
  n.kind = TermKind::Sub;
  n.sort = Sort::integer();
  n.args = {std::move(lhs), std::move(rhs)};
  return make(std::move(n));
}

Term
Term::neg(Term arg)
{
  requireInt(arg, "-");
  Node n;
  n.kind = TermKind::Neg;
  n.sort = Sort::integer();
  n.args = {std::move(arg)};
  return make(std::move(n));
}

Term
Term::cmp(CmpOp op, Term lhs, Term rhs)
{
  if (!lhs.sort().sameKind(rhs.sort()))
  {
    throw SortError("comparison between different sorts: " + lhs.toString()
                    + " and " + rhs.toString());
  }
  if (op != CmpOp::Eq && op != CmpOp::Ne && !lhs.sort().isInt())
  {
    throw SortError(std::string("ordering comparison ") + cmpName(op)
                    + " on Boolean operands; use orderingAtom");
  }
  Node n;
  n.kind = TermKind::Cmp;
  n.sort = Sort::boolean();
  n.op = op;
  n.args = {std::move(lhs), std::move(rhs)};
  return make(std::move(n));
}

Term
Term::lnot(Term arg)
{
  requireBool(arg, "not");
  Node n;
  n.kind = TermKind::Not;
  n.args = {std::move(arg)};
  return make(std::move(n));
}

Term
Term::land(std::vector<Term> args)
{
  for (const Term& a : args) requireBool(a, "and");
  Node n;
  n.kind = TermKind::And;
  n.args = std::move(args);
  return make(std::move(n));
}

Term
Term::lor(std::vector<Term> args)
{
  for (const Term& a : args) requireBool(a, "or");
  Node n;
  n.kind = TermKind::Or;
  n.args = std::move(args);
  return make(std::move(n));
}

Term
Term::implies(Term lhs, Term rhs)
{
  requireBool(lhs, "=>");
  requireBool(rhs, "=>");
  Node n;
  n.kind = TermKind::Implies;
  n.args = {std::move(lhs), std::move(rhs)};
  return make(std::move(n));
}

Term
Term::makeQuantifier(TermKind kind, std::vector<BoundVar> bound, Term body)
{
  if (bound.empty()) return body;
  if (!body.sort().isBool())
    throw SortError("quantifier body must be Boolean: " + body.toString());
  std::unordered_set<std::string> names;
  for (const BoundVar& b : bound)
  {
    if (!names.insert(b.name).second)
      throw SortError("variable " + b.name + " bound twice by one quantifier");
  }
  if (bindsAny(body, names))
    throw SortError("nested quantifier shadows a bound variable");
  Node n;
  n.kind = kind;
  n.bound = std::move(bound);
  n.args = {std::move(body)};
  return make(std::move(n));
}

Term
Term::forall(std::vector<BoundVar> bound, Term body)
{
  return makeQuantifier(TermKind::Forall, std::move(bound), std::move(body));
}

Term
Term::exists(std::vector<BoundVar> bound, Term body)
{
  return makeQuantifier(TermKind::Exists, std::move(bound), std::move(body));
}

bool
operator==(const Term& a, const Term& b)
{
  if (a.d_node == b.d_node) return true;
  const Term::Node& x = *a.d_node;
  const Term::Node& y = *b.d_node;
  if (x.hash != y.hash || x.kind != y.kind || x.value != y.value
      || x.op != y.op || x.name != y.name || !x.sort.sameKind(y.sort)
      || x.args.size() != y.args.size() || x.bound != y.bound)
  {
    return false;
  }
  if (x.symbol || y.symbol)
  {
    if (!x.symbol || !y.symbol || x.symbol->name != y.symbol->name
        || x.symbol->arity() != y.symbol->arity())
    {
      return false;
    }
  }
  for (std::size_t i = 0; i < x.args.size(); ++i)
  {
    if (x.args[i] != y.args[i]) return false;
  }
  return true;
}

std::string
Term::toString() const
{
  std::ostringstream os;
  print(os, *this);
  return os.str();
}

std::ostream&
operator<<(std::ostream& os, const Term& term)
{
  print(os, term);
  return os;
}

Term
conjoin(std::vector<Term> conjuncts)
{
  if (conjuncts.empty()) return Term::boolLit(true);
  if (conjuncts.size() == 1) return conjuncts.front();
  return Term::land(std::move(conjuncts));
}

std::string
smtSymbol(const std::string& name)
{
  bool plain = !name.empty()
               && !std::isdigit(static_cast<unsigned char>(name.front()))
               && std::all_of(name.begin(), name.end(), plainSymbolChar);
  return plain ? name : "|" + name + "|";
}

bool
isReservedName(const std::string& name)
{
  return !name.empty() && name.front() == '!';
}

}  // namespace monoinfer
