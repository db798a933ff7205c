#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <sys/types.h>

#include "monoinfer/smtlib.hpp"
#include "monoinfer/solver.hpp"

namespace monoinfer {

/// Environment variable that overrides the default solver command.
inline constexpr const char* kSolverEnvVar = "MONOINFER_SOLVER";
inline constexpr const char* kDefaultSolverCommand = "z3 -in";

/// Command from the environment, or the built-in default.
std::string defaultSolverCommand();

/// Session speaking incremental SMT-LIB 2.6 with a child process over
/// pipes. The command is split on whitespace and looked up on PATH; it must
/// read commands from standard input. When the time limit expires the whole
/// process group is killed and the pending check answers Unknown("timeout").
class ProcessSolverSession : public SolverSession
{
 public:
  /// Throws SolverError when the process cannot be started. An empty logic
  /// selects ALL.
  explicit ProcessSolverSession(const std::string& command,
                                const std::string& logic = "");
  ~ProcessSolverSession() override;

  /// Every command sent so far, one per line.
  const std::string& transcript() const { return d_transcript; }

 protected:
  void doDeclareFunction(const FunctionSymbol& symbol) override;
  void doDeclareConstant(const Term& constant) override;
  void doAssert(const Term& formula) override;
  CheckResult doCheck(std::string& reason) override;
  std::vector<Value> doValues(const std::vector<Term>& terms) override;
  Model doModel(const Signature& signature) override;
  void doSetTimeLimit(std::chrono::milliseconds limit) override;
  void doDispose() override;

 private:
  void send(const std::string& command);
  Sexpr receive();
  void terminate();
  void requireAlive() const;

  pid_t d_pid = -1;
  int d_toSolver = -1;
  int d_fromSolver = -1;
  bool d_dead = false;
  SexprReader d_reader;
  std::optional<std::chrono::steady_clock::time_point> d_deadline;
  std::string d_transcript;
};

}  // namespace monoinfer
