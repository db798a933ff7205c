#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace monoinfer {

/// Ground values. Booleans are represented as 0 (false) and 1 (true).
using Value = std::int64_t;

enum class SortKind
{
  Boolean,
  Integer
};

/// Inclusive integer interval.
struct Bounds
{
  Value lo;
  Value hi;

  bool contains(Value v) const { return lo <= v && v <= hi; }
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// Boolean or Integer sort. Integer sorts may carry inclusive bounds that the
/// inference encoding turns into explicit constraints; sort-correctness only
/// looks at the kind.
class Sort
{
 public:
  static Sort boolean() { return Sort(SortKind::Boolean, std::nullopt); }
  static Sort integer() { return Sort(SortKind::Integer, std::nullopt); }
  /// Throws SortError if lo > hi.
  static Sort bounded(Value lo, Value hi);

  SortKind kind() const { return d_kind; }
  bool isBool() const { return d_kind == SortKind::Boolean; }
  bool isInt() const { return d_kind == SortKind::Integer; }
  const std::optional<Bounds>& bounds() const { return d_bounds; }

  /// Finite value range: {0,1} for Boolean, the bounds for bounded Integer.
  std::optional<Bounds> range() const;

  bool sameKind(const Sort& other) const { return d_kind == other.d_kind; }

  friend bool operator==(const Sort&, const Sort&) = default;

 private:
  Sort(SortKind kind, std::optional<Bounds> bounds)
      : d_kind(kind), d_bounds(bounds)
  {
  }

  SortKind d_kind;
  std::optional<Bounds> d_bounds;
};

std::ostream& operator<<(std::ostream& os, const Sort& sort);

struct FunctionSymbol
{
  std::string name;
  std::vector<Sort> argSorts;
  Sort resultSort = Sort::integer();
  bool uninterpreted = true;

  std::size_t arity() const { return argSorts.size(); }
};

using SymbolRef = std::shared_ptr<const FunctionSymbol>;

SymbolRef makeSymbol(std::string name,
                     std::vector<Sort> argSorts,
                     Sort resultSort,
                     bool uninterpreted = true);

enum class TermKind
{
  IntLit,
  BoolLit,
  Const,
  Var,
  Apply,
  Add,
  Sub,
  Neg,
  Cmp,
  Not,
  And,
  Or,
  Implies,
  Forall,
  Exists
};

enum class CmpOp
{
  Le,
  Lt,
  Ge,
  Gt,
  Eq,
  Ne
};

struct BoundVar
{
  std::string name;
  Sort sort;

  friend bool operator==(const BoundVar&, const BoundVar&) = default;
};

/// Immutable, sort-checked term. Copies share the underlying node; equality
/// is structural (symbols compare by name and arity).
class Term
{
 public:
  static Term intLit(Value value);
  static Term boolLit(bool value);
  static Term constant(std::string name, Sort sort);
  static Term var(std::string name, Sort sort);
  static Term apply(SymbolRef symbol, std::vector<Term> args);
  static Term add(std::vector<Term> args);
  static Term sub(Term lhs, Term rhs);
  static Term neg(Term arg);
  static Term cmp(CmpOp op, Term lhs, Term rhs);
  static Term lnot(Term arg);
  static Term land(std::vector<Term> args);
  static Term lor(std::vector<Term> args);
  static Term implies(Term lhs, Term rhs);
  static Term forall(std::vector<BoundVar> bound, Term body);
  static Term exists(std::vector<BoundVar> bound, Term body);

  static Term eq(Term lhs, Term rhs) { return cmp(CmpOp::Eq, lhs, rhs); }
  static Term ne(Term lhs, Term rhs) { return cmp(CmpOp::Ne, lhs, rhs); }
  static Term le(Term lhs, Term rhs) { return cmp(CmpOp::Le, lhs, rhs); }
  static Term lt(Term lhs, Term rhs) { return cmp(CmpOp::Lt, lhs, rhs); }
  static Term ge(Term lhs, Term rhs) { return cmp(CmpOp::Ge, lhs, rhs); }
  static Term gt(Term lhs, Term rhs) { return cmp(CmpOp::Gt, lhs, rhs); }

  /// Literal of the given sort.
  static Term literal(Value value, const Sort& sort);

  TermKind kind() const { return d_node->kind; }
  const Sort& sort() const { return d_node->sort; }
  /// IntLit value, BoolLit value as 0/1.
  Value value() const { return d_node->value; }
  CmpOp op() const { return d_node->op; }
  /// Const/Var name.
  const std::string& name() const { return d_node->name; }
  const SymbolRef& symbol() const { return d_node->symbol; }
  const std::vector<Term>& args() const { return d_node->args; }
  const std::vector<BoundVar>& bound() const { return d_node->bound; }
  /// Body of a quantifier.
  const Term& body() const { return d_node->args.front(); }
  std::size_t hash() const { return d_node->hash; }

  bool isLiteral() const
  {
    return kind() == TermKind::IntLit || kind() == TermKind::BoolLit;
  }
  bool isApply() const { return kind() == TermKind::Apply; }
  bool isQuantifier() const
  {
    return kind() == TermKind::Forall || kind() == TermKind::Exists;
  }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

  /// SMT-LIB style rendering, for diagnostics.
  std::string toString() const;

 private:
  struct Node
  {
    TermKind kind = TermKind::BoolLit;
    Sort sort = Sort::boolean();
    Value value = 0;
    CmpOp op = CmpOp::Eq;
    std::string name;
    SymbolRef symbol;
    std::vector<Term> args;
    std::vector<BoundVar> bound;
    std::size_t hash = 0;
  };

  explicit Term(std::shared_ptr<const Node> node) : d_node(std::move(node)) {}
  static Term make(Node node);
  static Term makeQuantifier(TermKind kind,
                             std::vector<BoundVar> bound,
                             Term body);

  std::shared_ptr<const Node> d_node;
};

std::ostream& operator<<(std::ostream& os, const Term& term);

struct TermHash
{
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Conjunction that collapses the empty case to `true` and singletons to
/// their only element.
Term conjoin(std::vector<Term> conjuncts);

/// Symbol in SMT-LIB syntax, |quoted| unless it is a plain identifier.
std::string smtSymbol(const std::string& name);

/// Names starting with '!' are reserved for generated constants and bound
/// variables and are rejected from user input.
bool isReservedName(const std::string& name);

}  // namespace monoinfer
