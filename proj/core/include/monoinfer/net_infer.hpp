#pragma once

#include <cstddef>
#include <vector>

#include "monoinfer/formula.hpp"
#include "monoinfer/model.hpp"
#include "monoinfer/monotonicity.hpp"
#include "monoinfer/network.hpp"

namespace monoinfer {

struct NetEncodeOptions
{
  /// Instantiate Boolean essentiality witnesses with true/false and
  /// propagate observed values into fixed-point constraints.
  bool simplify = true;
};

/// Update symbol `f_<name>` per variable, indexed like the variable list.
/// Arguments follow regulatorsOf(); the result sort is the target domain.
std::vector<SymbolRef> buildSignature(const InferenceProblem& problem);

MonotonicitySpec buildMonotonicitySpec(const InferenceProblem& problem,
                                       const std::vector<SymbolRef>& symbols);

/// ∃x,y,z̄. f_t(..x..) != f_t(..y..) varying only the position of `source`.
/// Throws UsageError if the regulation is missing or not essential.
Term essentialityConstraint(const InferenceProblem& problem,
                            const std::vector<SymbolRef>& symbols,
                            std::size_t target,
                            std::size_t source,
                            const NetEncodeOptions& options = {});

/// Existence of a fixed point matching `observation`. Throws SortError for
/// an observed value outside its domain.
Term fixedPointConstraint(const InferenceProblem& problem,
                          const std::vector<SymbolRef>& symbols,
                          const FixedPointObservation& observation,
                          const NetEncodeOptions& options = {});

/// lo <= t <= hi for every bounded Integer constant or application in `phi`.
Term boundsConstraints(const Term& phi);

struct NetworkEncoding
{
  std::vector<SymbolRef> symbols;
  MonotonicitySpec spec;
  /// Quantifier-free conjunction of constraints and bounds.
  Term formula = Term::boolLit(true);
  /// Skolem constants introduced for existential witnesses.
  std::vector<Term> skolems;
};

NetworkEncoding encodeInference(const InferenceProblem& problem,
                                const NetEncodeOptions& options = {});

/// Complete tables from a model of the encoding, filling points the model
/// leaves open through the monotone completion. Throws UsageError for
/// unbounded domains.
std::vector<UpdateFunctionTable> decodeSolution(const Model& model,
                                                const InferenceProblem& problem,
                                                const NetworkEncoding& encoding);

}  // namespace monoinfer
