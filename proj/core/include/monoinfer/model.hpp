#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "monoinfer/term.hpp"

namespace monoinfer {

/// Finite presentation of a function: explicit points plus a default value
/// for every argument vector not listed.
struct FunctionTable
{
  SymbolRef symbol;
  std::map<std::vector<Value>, Value> points;
  Value defaultValue = 0;

  Value at(const std::vector<Value>& args) const;
};

/// Anything that can give meaning to constants and uninterpreted symbols.
class Interpretation
{
 public:
  virtual ~Interpretation() = default;

  /// Throws EvaluationError when the constant is unknown.
  virtual Value constantValue(const Term& constant) const = 0;
  virtual Value applyFunction(const FunctionSymbol& symbol,
                              const std::vector<Value>& args) const = 0;
};

/// Finite model: constant assignments and per-symbol lookup tables.
class Model : public Interpretation
{
 public:
  void setConstant(const std::string& name, Value value);
  /// Adds a table point, creating the table on first use.
  void setPoint(const SymbolRef& symbol, std::vector<Value> args, Value value);
  void setTable(FunctionTable table);

  bool hasConstant(const std::string& name) const;
  const FunctionTable* table(const std::string& symbolName) const;

  const std::map<std::string, Value>& constants() const { return d_constants; }
  const std::map<std::string, FunctionTable>& functions() const
  {
    return d_functions;
  }

  Value constantValue(const Term& constant) const override;
  Value applyFunction(const FunctionSymbol& symbol,
                      const std::vector<Value>& args) const override;

  std::string toString() const;

 private:
  std::map<std::string, Value> d_constants;
  std::map<std::string, FunctionTable> d_functions;
};

/// Values of individual ground terms, as returned by a solver's get-value.
using TermValuation = std::unordered_map<Term, Value, TermHash>;

/// Evaluate a closed term. Quantifiers are expanded over Boolean and bounded
/// Integer sorts; an unbounded quantifier raises EvaluationError.
Value evaluate(const Term& term, const Interpretation& interpretation);

/// Evaluate a ground term where every constant and application is looked up
/// in `valuation`. Raises EvaluationError for a missing entry.
Value evaluate(const Term& term, const TermValuation& valuation);

/// Boolean result of evaluate().
bool holds(const Term& formula, const Interpretation& interpretation);
bool holds(const Term& formula, const TermValuation& valuation);

}  // namespace monoinfer
