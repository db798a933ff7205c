#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "monoinfer/model.hpp"
#include "monoinfer/term.hpp"

namespace monoinfer {

enum class CheckResult
{
  Sat,
  Unsat,
  Unknown
};

const char* toString(CheckResult result);

/// Outcome of a satisfiability query: Sat with a model, Unsat, or Unknown
/// with a reason ("timeout", "incomplete", a solver message, ...).
class SolverVerdict
{
 public:
  enum class Kind
  {
    Sat,
    Unsat,
    Unknown
  };

  static SolverVerdict sat(Model model);
  static SolverVerdict unsat();
  static SolverVerdict unknown(std::string reason);

  Kind kind() const { return d_kind; }
  bool isSat() const { return d_kind == Kind::Sat; }
  bool isUnsat() const { return d_kind == Kind::Unsat; }
  bool isUnknown() const { return d_kind == Kind::Unknown; }

  /// Throws UsageError unless the verdict is Sat.
  const Model& model() const;
  const std::string& reason() const { return d_reason; }

  /// "sat", "unsat" or "unknown".
  std::string name() const;

 private:
  SolverVerdict(Kind kind, std::optional<Model> model, std::string reason)
      : d_kind(kind), d_model(std::move(model)), d_reason(std::move(reason))
  {
  }

  Kind d_kind;
  std::optional<Model> d_model;
  std::string d_reason;
};

/// Uninterpreted symbols and constants that a script must declare.
struct Signature
{
  std::vector<SymbolRef> functions;
  std::vector<Term> constants;

  /// Add symbols and constants of `formula` not yet present, in order of
  /// first occurrence. Throws SortError on a name clash with a different
  /// sort or arity.
  void extend(const Term& formula);
  bool empty() const { return functions.empty() && constants.empty(); }

 private:
  struct NameInfo
  {
    bool function;
    std::size_t arity;
    SortKind sort;
  };
  std::map<std::string, NameInfo> d_names;
};

/// Incremental solving session. Assertions are cumulative. Value and model
/// queries are only legal directly after a Sat answer; anything else raises
/// UsageError. A session is single-owner and not thread-safe.
class SolverSession
{
 public:
  virtual ~SolverSession() = default;

  SolverSession(const SolverSession&) = delete;
  SolverSession& operator=(const SolverSession&) = delete;

  void declare(const SymbolRef& symbol);
  void declareConstant(const Term& constant);
  /// Declares any symbols of `formula` not declared yet, then asserts it.
  /// `formula` must be closed and Boolean.
  void assertFormula(const Term& formula);
  CheckResult checkSat();
  std::vector<Value> valueOf(const std::vector<Term>& terms);
  Model extractModel();
  /// Wall-clock budget for the rest of the session, measured from now.
  void setTimeLimit(std::chrono::milliseconds limit);
  void dispose();

  std::size_t checkSatCalls() const { return d_checks; }
  std::size_t assertionCount() const { return d_assertions; }
  /// Reason attached to the last Unknown answer.
  const std::string& unknownReason() const { return d_unknownReason; }

 protected:
  SolverSession() = default;

  virtual void doDeclareFunction(const FunctionSymbol& symbol) = 0;
  virtual void doDeclareConstant(const Term& constant) = 0;
  virtual void doAssert(const Term& formula) = 0;
  /// Sets `reason` when returning Unknown.
  virtual CheckResult doCheck(std::string& reason) = 0;
  virtual std::vector<Value> doValues(const std::vector<Term>& terms) = 0;
  virtual Model doModel(const Signature& signature) = 0;
  virtual void doSetTimeLimit(std::chrono::milliseconds limit) = 0;
  virtual void doDispose() = 0;

 private:
  enum class State
  {
    Open,
    Sat,
    NotSat,
    Disposed
  };

  void requireOpen() const;
  void requireSat(const char* what) const;

  State d_state = State::Open;
  Signature d_declared;
  std::set<std::string> d_names;
  std::size_t d_checks = 0;
  std::size_t d_assertions = 0;
  std::string d_unknownReason;
};

}  // namespace monoinfer
