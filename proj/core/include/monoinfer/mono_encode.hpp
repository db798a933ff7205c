#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monoinfer/formula.hpp"
#include "monoinfer/model.hpp"
#include "monoinfer/monotonicity.hpp"
#include "monoinfer/solver.hpp"

namespace monoinfer {

/// The four ways of handling a monotonicity specification.
enum class Strategy
{
  QuantIndividual,
  QuantAggregated,
  InstEager,
  InstLazy
};

/// CLI spelling: quantified-individual, quantified-aggregated,
/// instantiated-eager, instantiated-lazy.
std::string toString(Strategy strategy);
/// Throws UsageError for an unknown name.
Strategy parseStrategy(const std::string& name);
std::vector<Strategy> allStrategies();

struct EncodeOptions
{
  /// Evaluate comparisons between two literals inside lemma antecedents;
  /// lemmas whose antecedent becomes false are not asserted.
  bool foldConstants = true;
};

/// A monotonicity lemma for one ordered pair of applications.
struct LemmaInstance
{
  SymbolRef symbol;
  ArgVector lhs;
  ArgVector rhs;
  /// The full implication as built, before folding.
  Term lemma = Term::boolLit(true);
  /// What gets asserted; empty when folding proved the lemma vacuous.
  std::optional<Term> asserted;
};

struct EncodedProblem
{
  Strategy strategy = Strategy::InstEager;
  /// The input formula.
  Term base = Term::boolLit(true);
  /// Quantified constraints or asserted lemmas added to `base`.
  std::vector<Term> additions;
  /// Number of monotonicity constraints generated: quantified conjuncts for
  /// the quantified encodings, ordered pairs (before folding) for eager.
  std::size_t lemmaCount = 0;

  /// base ∧ additions.
  Term formula() const;
  /// Top-level conjuncts of `base` followed by `additions`, one assertion
  /// each.
  std::vector<Term> assertions() const;
};

/// One universally quantified constraint per constrained argument.
/// Throws SortError if the specification names a symbol that occurs in
/// `phi` with a different signature.
EncodedProblem encodeQuantIndividual(const Term& phi, const MonotonicitySpec& spec);

/// One universally quantified aggregated constraint per constrained symbol.
EncodedProblem encodeQuantAggregated(const Term& phi, const MonotonicitySpec& spec);

/// Ground instance of the aggregated implication at (lhs, rhs):
/// (⋀ monotone lhs_i <= rhs_i ∧ ⋀ antitone rhs_i <= lhs_i ∧ ⋀ others
/// lhs_i = rhs_i) → f(lhs) <= f(rhs). Throws SortError on arity mismatch.
Term monotonicityLemma(const SymbolRef& symbol,
                       const ArgVector& lhs,
                       const ArgVector& rhs,
                       const MonotonicitySpec& spec);

/// Lemma with literal-only comparisons in the antecedent evaluated. Returns
/// nullopt when the antecedent folds to false.
std::optional<Term> foldLemma(const Term& lemma);

/// All lemmas for ordered pairs of distinct applications of each
/// constrained symbol of `phi`.
std::vector<LemmaInstance> lemmaCandidates(const Term& phi,
                                           const MonotonicitySpec& spec,
                                           const EncodeOptions& options = {});

/// phi together with every candidate lemma. Throws UsageError if `phi`
/// contains quantifiers.
EncodedProblem encodeEager(const Term& phi,
                           const MonotonicitySpec& spec,
                           const EncodeOptions& options = {});

/// Candidate lemmas falsified by the given term values.
std::vector<Term> violatedLemmas(const std::vector<LemmaInstance>& candidates,
                                 const TermValuation& valuation);
std::vector<Term> violatedLemmas(const Term& phi,
                                 const MonotonicitySpec& spec,
                                 const TermValuation& valuation);

/// Result of running one strategy against a session.
struct SolveOutcome
{
  SolverVerdict verdict = SolverVerdict::unknown("not run");
  std::size_t checkSatCalls = 0;
  std::size_t lemmaCount = 0;
  /// Lemmas asserted by the lazy loop, in assertion order.
  std::vector<Term> assertedLemmas;
  std::size_t iterations = 0;
  /// Set when the verdict is Unknown because the solver or the evaluation
  /// of its answer failed, rather than because the solver said unknown.
  std::optional<std::string> failure;
};

/// Assert an already encoded problem and check it once.
SolveOutcome solveEncoded(const EncodedProblem& encoded, SolverSession& session);

/// Lazy lemma loop: assert phi, then repeatedly assert the candidate lemmas
/// violated by the current candidate model until none remain or the
/// formula becomes unsatisfiable.
SolveOutcome solveLazy(const Term& phi,
                       const MonotonicitySpec& spec,
                       SolverSession& session,
                       const EncodeOptions& options = {});

/// Encode with `strategy` and solve in `session`. Solver failures and
/// timeouts become Unknown verdicts.
SolveOutcome solveWith(Strategy strategy,
                       const Term& phi,
                       const MonotonicitySpec& spec,
                       SolverSession& session,
                       const EncodeOptions& options = {});

/// Finite model built from solver values of every constant and application
/// of `phi`. Table defaults are the smallest table output.
Model modelFromValuation(const Term& phi, const TermValuation& valuation);

/// Ground subterms whose values determine a model of `phi`: constants and
/// applications, in order of first occurrence.
std::vector<Term> valuationTerms(const Term& phi);

/// Point order of a signed argument list: p ⪯ q iff p_i <= q_i on
/// monotone positions, q_i <= p_i on antitone ones and p_i = q_i elsewhere.
bool dominatedBy(const std::vector<Value>& p,
                 const std::vector<Value>& q,
                 const ArgumentSigns& signs);

/// Completion of finite function tables into functions that are monotone
/// over the whole domain: f(x) = max of the table outputs at points ⪯ x,
/// or the default (smallest table output) if there are none.
class MonotoneModel : public Interpretation
{
 public:
  MonotoneModel(Model base, MonotonicitySpec spec);

  const Model& base() const { return d_base; }
  const MonotonicitySpec& spec() const { return d_spec; }
  Value defaultValue(const std::string& symbolName) const;

  Value constantValue(const Term& constant) const override;
  Value applyFunction(const FunctionSymbol& symbol,
                      const std::vector<Value>& args) const override;

  /// Pairwise table monotonicity: dominated points never have larger
  /// outputs. Returns a description of the first offending pair.
  std::optional<std::string> invariantViolation() const;

 private:
  Model d_base;
  MonotonicitySpec d_spec;
  std::map<std::string, Value> d_defaults;
};

/// Throws UsageError if a table violates a ground lemma between two of its
/// points (the base was not a model of the instantiated formula).
MonotoneModel monotonizeModel(const Model& base, const MonotonicitySpec& spec);

}  // namespace monoinfer
