#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monoinfer/term.hpp"

namespace monoinfer {

enum class RegulationSign
{
  Monotone,
  AntiMonotone,
  Unknown
};

std::string toString(RegulationSign sign);

/// A network component. Integer domains are `0..maxLevel`; an unbounded
/// Integer sort is accepted by the encoder but not by table-based code.
struct NetworkVariable
{
  std::string name;
  Sort domain = Sort::boolean();
};

/// Edge `source -> target`, both given as indices into the variable list.
struct Regulation
{
  std::size_t source = 0;
  std::size_t target = 0;
  RegulationSign sign = RegulationSign::Unknown;
  bool essential = false;
};

/// Partial assignment asserting the existence of a matching fixed point.
struct FixedPointObservation
{
  std::string name;
  std::map<std::size_t, Value> values;

  bool total(std::size_t variableCount) const
  {
    return values.size() == variableCount;
  }
};

class InferenceProblem
{
 public:
  std::vector<NetworkVariable> variables;
  std::vector<Regulation> regulations;
  std::vector<FixedPointObservation> observations;

  /// Throws SortError describing the first broken invariant.
  void validate() const;

  std::optional<std::size_t> indexOf(const std::string& name) const;
  /// Regulators of `target` in variable-list order.
  std::vector<std::size_t> regulatorsOf(std::size_t target) const;
  const Regulation* regulation(std::size_t source, std::size_t target) const;
  /// Every domain is Boolean or a bounded Integer interval.
  bool bounded() const;
  bool allBoolean() const;
};

/// Values of a bounded domain in increasing order.
std::vector<Value> domainValues(const Sort& domain);

/// Complete update function of one variable over its regulators' grid.
struct UpdateFunctionTable
{
  std::size_t variable = 0;
  std::vector<std::size_t> regulators;
  std::map<std::vector<Value>, Value> rows;

  /// Throws EvaluationError for a missing row.
  Value at(const std::vector<Value>& args) const;
};

/// All argument tuples of the product of the given domains, in
/// lexicographic order (last position varying fastest).
std::vector<std::vector<Value>> gridOf(const std::vector<Sort>& domains);

struct VerifyResult
{
  bool ok = true;
  std::string violation;

  explicit operator bool() const { return ok; }
  static VerifyResult pass() { return {}; }
  static VerifyResult fail(std::string why) { return {false, std::move(why)}; }
};

/// Independent check of monotonicity, essentiality and fixed-point
/// extension on complete tables. Throws UsageError if `tables` does not have
/// one table per variable over the right grid.
VerifyResult verifySolution(const InferenceProblem& problem,
                            const std::vector<UpdateFunctionTable>& tables);

/// Whether the partial assignment extends to a state `x` with
/// `x_v = f_v(x)` for every variable. Fills `completion` when given.
bool extendsToFixedPoint(const InferenceProblem& problem,
                         const std::vector<UpdateFunctionTable>& tables,
                         const FixedPointObservation& observation,
                         std::vector<Value>* completion = nullptr);

/// Human-readable listing of tables, one row per line.
std::string formatTables(const InferenceProblem& problem,
                         const std::vector<UpdateFunctionTable>& tables);

}  // namespace monoinfer
