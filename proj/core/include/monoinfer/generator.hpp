#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "monoinfer/network.hpp"

namespace monoinfer {

enum class GenerationMode
{
  /// Observations are fixed points of a sampled monotone model: always sat.
  Planted,
  /// As planted, then one observed value is changed: frequently unsat.
  Perturbed
};

std::string toString(GenerationMode mode);
/// Throws UsageError for anything but "planted" or "perturbed".
GenerationMode parseGenerationMode(const std::string& name);

struct GeneratorParams
{
  std::size_t nVars = 5;
  /// Regulator count per variable is drawn from 1..maxArity (0 allowed only
  /// when maxArity is 0).
  std::size_t maxArity = 3;
  /// 2 gives Boolean variables, larger values Integer domains 0..size-1.
  std::size_t domainSize = 2;
  /// Probability that a regulation carries a sign.
  double signRatio = 0.7;
  /// Probability that a regulation the planted model really depends on is
  /// declared essential.
  double essentialRatio = 0.7;
  std::size_t nObservations = 3;
  GenerationMode mode = GenerationMode::Planted;
  /// Probability that a variable's value is kept in an observation; at
  /// least one value always is.
  double observeRatio = 1.0;

  /// Throws UsageError naming the first out-of-range parameter.
  void validate() const;
};

struct GeneratedInstance
{
  InferenceProblem problem;
  /// The planted model, one table per variable.
  std::vector<UpdateFunctionTable> groundTruth;
};

/// Deterministic in (seed, params).
GeneratedInstance generateInstance(std::uint64_t seed, const GeneratorParams& params);

}  // namespace monoinfer
