#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "monoinfer/term.hpp"

namespace monoinfer {

/// Argument vector of a function application.
using ArgVector = std::vector<Term>;

using TermSet = std::unordered_set<Term, TermHash>;

/// Copy of `v` with position `i` (0-based) replaced by `b`.
/// Throws UsageError on a bad index and SortError on a sort mismatch.
ArgVector substAt(const ArgVector& v, std::size_t i, const Term& b);

/// All syntactic subterms of `phi` including `phi` itself, deduplicated,
/// in pre-order of first occurrence. Quantifier bodies are traversed.
std::vector<Term> subterms(const Term& phi);

/// Argument vectors of every application of `symbol` inside `phi`,
/// deduplicated syntactically, in order of first occurrence.
std::vector<ArgVector> applicationsOf(const Term& phi,
                                      const FunctionSymbol& symbol);

/// Distinct function symbols applied in `phi`, in order of first occurrence.
std::vector<SymbolRef> collectSymbols(const Term& phi);

/// Distinct constants of `phi`, in order of first occurrence.
std::vector<Term> collectConstants(const Term& phi);

/// Names of variables occurring free in `phi`.
std::vector<std::string> freeVariables(const Term& phi);

bool isGround(const Term& phi);
bool hasQuantifiers(const Term& phi);

/// Replace free occurrences of variables by terms.
Term substitute(const Term& phi,
                const std::vector<std::pair<std::string, Term>>& mapping);

/// The order `lhs <= rhs` on a shared sort: `lhs <= rhs` for Integer,
/// `lhs => rhs` for Boolean (false < true).
Term orderingAtom(const Term& lhs, const Term& rhs);

/// Source of fresh symbol names `<prefix><n>`. Prefixes must start with the
/// reserved '!' character so generated names never collide with user names.
class NameSupply
{
 public:
  explicit NameSupply(std::string prefix = "!sk");

  std::string fresh();
  std::uint64_t issued() const { return d_next.load(); }

 private:
  std::string d_prefix;
  std::atomic<std::uint64_t> d_next{0};
};

/// Replace every existential quantifier in positive position by fresh
/// constants drawn from `names`. Constants created are appended to
/// `introduced` when given. Throws SortError if an existential occurs under
/// negation, in an implication antecedent, inside an equality between
/// formulas or below a universal quantifier.
Term skolemize(const Term& phi,
               NameSupply& names,
               std::vector<Term>* introduced = nullptr);

}  // namespace monoinfer
