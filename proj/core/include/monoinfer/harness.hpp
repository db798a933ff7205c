#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "monoinfer/mono_encode.hpp"
#include "monoinfer/net_infer.hpp"
#include "monoinfer/network.hpp"

namespace monoinfer {

enum class FailureKind
{
  None,
  Timeout,
  Crash,
  Unsupported
};

std::string toString(FailureKind kind);

struct RunOptions
{
  Strategy strategy = Strategy::InstLazy;
  /// Empty selects defaultSolverCommand().
  std::string solverCommand;
  std::chrono::milliseconds timeLimit{600000};
  /// Decode Sat answers into tables and check them independently.
  bool verify = false;
  NetEncodeOptions encoding;
  EncodeOptions lemmas;
  /// When non-empty, the SMT-LIB script of the run is written here.
  std::string emitSmt2;
};

struct RunRecord
{
  std::string instance;
  Strategy strategy = Strategy::InstLazy;
  /// The solver's answer; empty exactly when `failure` is set.
  std::optional<CheckResult> verdict;
  FailureKind failure = FailureKind::None;
  /// Unknown reason or failure description.
  std::string detail;
  double wallMs = 0.0;
  std::size_t lemmaCount = 0;
  std::size_t checkSatCount = 0;
  /// Result of verifySolution when requested on a Sat answer.
  std::optional<bool> verified;
  /// Decoded tables for verified Sat answers.
  std::vector<UpdateFunctionTable> tables;

  bool solved() const
  {
    return verdict && (*verdict == CheckResult::Sat || *verdict == CheckResult::Unsat);
  }
  /// "sat", "unsat", "unknown" or the failure kind.
  std::string outcome() const;
};

/// Encode, solve and optionally verify one problem. Never throws for
/// solver or encoding problems; they end up in the record.
RunRecord runSingle(const InferenceProblem& problem,
                    const std::string& instance,
                    const RunOptions& options);

/// Like runSingle, with reading and parsing the file included in the
/// measured time. Unreadable or malformed files are recorded as
/// unsupported.
RunRecord runSingleFile(const std::string& path, const RunOptions& options);

/// `*.problem` files of a directory in lexicographic order.
std::vector<std::string> problemFiles(const std::string& directory);

struct BatchOptions
{
  std::vector<Strategy> strategies = allStrategies();
  std::size_t parallelism = 16;
  RunOptions run;
};

/// Every (instance, strategy) pair of the directory on a worker pool.
/// Records are ordered by instance, then by the order of `strategies`.
std::vector<RunRecord> runBatch(const std::string& directory, const BatchOptions& options);
std::vector<RunRecord> runBatch(const std::vector<std::string>& files,
                                const BatchOptions& options);

/// instance,strategy,verdict,failure,wall_ms,lemma_count,check_sat_count,verified
void writeRecordsCsv(std::ostream& out, const std::vector<RunRecord>& records);

struct CumulativePoint
{
  double timeMs = 0.0;
  std::size_t solved = 0;
};

/// Per strategy, the solve times in increasing order paired with the
/// number of instances solved up to then.
std::map<Strategy, std::vector<CumulativePoint>> cumulativeSolved(
    const std::vector<RunRecord>& records);

/// Number of instances solved within `timeMs` according to `curve`.
std::size_t solvedWithin(const std::vector<CumulativePoint>& curve, double timeMs);

/// strategy,time_ms,solved
void writeCumulativeCsv(std::ostream& out,
                        const std::map<Strategy, std::vector<CumulativePoint>>& curves);

}  // namespace monoinfer
