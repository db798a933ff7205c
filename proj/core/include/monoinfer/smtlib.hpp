#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "monoinfer/model.hpp"
#include "monoinfer/solver.hpp"
#include "monoinfer/term.hpp"

namespace monoinfer {

struct EmitOptions
{
  /// Empty selects the logic from the assertions (see selectLogic).
  std::string logic;
  bool checkSat = true;
  /// Comment placed as the first line, without the leading ';'.
  std::string comment;
};

/// QF_UF / UF for purely Boolean content, QF_UFLIA / UFLIA otherwise; the
/// quantifier-free variant when no assertion contains a quantifier.
std::string selectLogic(const std::vector<Term>& assertions);

/// `(declare-fun name (Int Bool) Int)` style declaration lines.
std::string declareFunction(const FunctionSymbol& symbol);
std::string declareConstant(const Term& constant);

/// Deterministic SMT-LIB 2.6 script. The signature is extended with every
/// symbol of the assertions, so an empty signature may be passed.
std::string emitSmtlib(const Signature& declarations,
                       const std::vector<Term>& assertions,
                       const EmitOptions& options = {});

/// S-expression as produced by SMT-LIB solvers.
struct Sexpr
{
  bool atom = true;
  /// Atom text; |quoted| symbols are stored without the bars.
  std::string text;
  std::vector<Sexpr> items;

  bool isAtom(std::string_view s) const { return atom && text == s; }
  std::string toString() const;
};

/// Parse all top-level s-expressions of `text`. Throws ParseError.
std::vector<Sexpr> parseSexprs(std::string_view text);

/// Incremental reader: feed bytes, pop complete top-level expressions.
class SexprReader
{
 public:
  void feed(std::string_view bytes);
  /// True when a complete expression is buffered; it is moved to `out`.
  bool next(Sexpr& out);

 private:
  std::string d_buffer;
};

/// Ground value literal: numeral, `(- n)`, `true` or `false`.
/// Throws SolverError for anything else.
Value parseValue(const Sexpr& e);

/// Model from a `(get-model)` or `(get-value ...)` response. Function bodies
/// must be if-then-else chains over conjunctions of argument equalities
/// with literal leaves; anything else raises SolverError that quotes the raw
/// text. `known` resolves symbol and constant sorts for get-value pairs.
Model parseModelResponse(std::string_view text, const Signature* known = nullptr);

}  // namespace monoinfer
