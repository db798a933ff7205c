#include "monoinfer/model.hpp"

#include <sstream>

#include "monoinfer/errors.hpp"

namespace monoinfer {

namespace {

struct Scope
{
  std::vector<std::pair<std::string, Value>> vars;

  Value lookup(const std::string& name) const
  {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    {
      if (it->first == name) return it->second;
    }
    throw EvaluationError("unbound variable " + name);
  }
};

class Evaluator
{
 public:
  Evaluator(const Interpretation* interpretation, const TermValuation* valuation)
      : d_interp(interpretation), d_valuation(valuation)
  {
  }

  Value eval(const Term& t)
  {
    if (d_valuation)
    {
      auto it = d_valuation->find(t);
      if (it != d_valuation->end()) return it->second;
    }
    switch (t.kind())
    {
      case TermKind::IntLit:
      case TermKind::BoolLit: return t.value();
      case TermKind::Const:
        if (!d_interp)
          throw EvaluationError("no value for constant " + t.toString());
        return d_interp->constantValue(t);
      case TermKind::Var: return d_scope.lookup(t.name());
      case TermKind::Apply:
      {
        if (!d_interp)
          throw EvaluationError("no value for application " + t.toString());
        std::vector<Value> args;
        args.reserve(t.args().size());
        for (const Term& a : t.args()) args.push_back(eval(a));
        return d_interp->applyFunction(*t.symbol(), args);
      }
      case TermKind::Add:
      {
        Value sum = 0;
        for (const Term& a : t.args()) sum += eval(a);
        return sum;
      }
      case TermKind::Sub: return eval(t.args()[0]) - eval(t.args()[1]);
      case TermKind::Neg: return -eval(t.args()[0]);
      case TermKind::Cmp:
      {
        Value l = eval(t.args()[0]);
        Value r = eval(t.args()[1]);
        switch (t.op())
        {
          case CmpOp::Le: return l <= r;
          case CmpOp::Lt: return l < r;
          case CmpOp::Ge: return l >= r;
          case CmpOp::Gt: return l > r;
          case CmpOp::Eq: return l == r;
          case CmpOp::Ne: return l != r;
        }
        return 0;
      }
      case TermKind::Not: return eval(t.args()[0]) ? 0 : 1;
      case TermKind::And:
      {
        bool result = true;
        for (const Term& a : t.args()) result = (eval(a) != 0) && result;
        return result;
      }
      case TermKind::Or:
      {
        bool result = false;
        for (const Term& a : t.args()) result = (eval(a) != 0) || result;
        return result;
      }
      case TermKind::Implies:
      {
        bool lhs = eval(t.args()[0]) != 0;
        bool rhs = eval(t.args()[1]) != 0;
        return !lhs || rhs;
      }
      case TermKind::Forall:
      case TermKind::Exists: return quantify(t, 0);
    }
    return 0;
  }

 private:
  Value quantify(const Term& q, std::size_t index)
  {
    bool universal = q.kind() == TermKind::Forall;
    if (index == q.bound().size()) return eval(q.body());
    const BoundVar& b = q.bound()[index];
    auto range = b.sort.range();
    if (!range)
    {
      throw EvaluationError("cannot evaluate a quantifier over unbounded "
                            + b.name);
    }
    for (Value v = range->lo; v <= range->hi; ++v)
    {
      d_scope.vars.emplace_back(b.name, v);
      bool r = quantify(q, index + 1) != 0;
      d_scope.vars.pop_back();
      if (universal && !r) return 0;
      if (!universal && r) return 1;
    }
    return universal ? 1 : 0;
  }

  const Interpretation* d_interp;
  const TermValuation* d_valuation;
  Scope d_scope;
};

}  // namespace

Value
FunctionTable::at(const std::vector<Value>& args) const
{
  auto it = points.find(args);
  return it == points.end() ? defaultValue : it->second;
}

void
Model::setConstant(const std::string& name, Value value)
{
  d_constants.insert_or_assign(name, value);
}

void
Model::setPoint(const SymbolRef& symbol, std::vector<Value> args, Value value)
{
  auto [it, inserted] = d_functions.try_emplace(symbol->name);
  if (inserted) it->second.symbol = symbol;
  it->second.points.insert_or_assign(std::move(args), value);
}

void
Model::setTable(FunctionTable table)
{
  std::string name = table.symbol->name;
  d_functions.insert_or_assign(std::move(name), std::move(table));
}

bool
Model::hasConstant(const std::string& name) const
{
  return d_constants.count(name) != 0;
}

const FunctionTable*
Model::table(const std::string& symbolName) const
{
  auto it = d_functions.find(symbolName);
  return it == d_functions.end() ? nullptr : &it->second;
}

Value
Model::constantValue(const Term& constant) const
{
  auto it = d_constants.find(constant.name());
  if (it == d_constants.end())
    throw EvaluationError("model has no value for constant " + constant.name());
  return it->second;
}

Value
Model::applyFunction(const FunctionSymbol& symbol,
                     const std::vector<Value>& args) const
{
  const FunctionTable* t = table(symbol.name);
  if (!t)
  {
    throw EvaluationError("model has no interpretation for symbol "
                          + symbol.name);
  }
  return t->at(args);
}

std::string
Model::toString() const
{
  std::ostringstream os;
  for (const auto& [name, value] : d_constants)
    os << name << " = " << value << "\n";
  for (const auto& [name, table] : d_functions)
  {
    os << name << ":";
    for (const auto& [args, value] : table.points)
    {
      os << " (";
      for (std::size_t i = 0; i < args.size(); ++i)
        os << (i ? "," : "") << args[i];
      os << ")->" << value;
    }
    os << " else " << table.defaultValue << "\n";
  }
  return os.str();
}

Value
evaluate(const Term& term, const Interpretation& interpretation)
{
  return Evaluator(&interpretation, nullptr).eval(term);
}

Value
evaluate(const Term& term, const TermValuation& valuation)
{
  return Evaluator(nullptr, &valuation).eval(term);
}

bool
holds(const Term& formula, const Interpretation& interpretation)
{
  return evaluate(formula, interpretation) != 0;
}

bool
holds(const Term& formula, const TermValuation& valuation)
{
  return evaluate(formula, valuation) != 0;
}

}  // namespace monoinfer
