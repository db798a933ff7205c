#pragma once

#include <cstdint>
#include <vector>

#include "monoinfer/monotonicity.hpp"
#include "monoinfer/network.hpp"

namespace monoinfer {

struct OracleOptions
{
  /// Search effort allowed per variable (or per symbol), counted in
  /// enumerated table rows plus complete candidate tables. Exceeding it
  /// raises BudgetExceeded.
  std::uint64_t budget = std::uint64_t{1} << 20;
};

struct OracleVerdict
{
  bool sat = false;
  /// One table per variable when sat.
  std::vector<UpdateFunctionTable> witness;
};

/// Exhaustive decision procedure for bounded inference problems. Throws
/// UsageError for unbounded domains and BudgetExceeded for large instances.
OracleVerdict oracleInference(const InferenceProblem& problem,
                              const OracleOptions& options = {});

/// Number of table combinations satisfying every constraint of the
/// problem. Throws BudgetExceeded when the count does not fit 64 bits.
std::uint64_t countSolutions(const InferenceProblem& problem,
                             const OracleOptions& options = {});

/// Satisfiability of `phi` under `spec` over structures whose Integer
/// universe is `grid` (Boolean values are 0/1). Constants and function
/// arguments must stay within the grid; leaving it raises UsageError.
bool oracleMonoSat(const Term& phi,
                   const MonotonicitySpec& spec,
                   Bounds grid,
                   const OracleOptions& options = {});

}  // namespace monoinfer
