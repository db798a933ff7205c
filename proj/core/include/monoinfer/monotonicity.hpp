#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "monoinfer/term.hpp"

namespace monoinfer {

/// Monotone and anti-monotone argument positions of one symbol. Positions
/// are 0-based.
struct ArgumentSigns
{
  std::set<std::size_t> monotone;
  std::set<std::size_t> antitone;

  bool empty() const { return monotone.empty() && antitone.empty(); }
  bool constrains(std::size_t i) const
  {
    return monotone.count(i) || antitone.count(i);
  }
};

/// Per-symbol monotonicity requirements. Symbols without an entry are
/// unconstrained. Iteration order is by symbol name.
class MonotonicitySpec
{
 public:
  struct Entry
  {
    SymbolRef symbol;
    ArgumentSigns signs;
  };

  /// Throws SortError if the symbol is interpreted, an index is out of
  /// range, or the two index sets intersect. Replaces an existing entry.
  void set(SymbolRef symbol, ArgumentSigns signs);

  const Entry* find(const std::string& symbolName) const;
  /// Signs of a symbol; empty for unconstrained symbols.
  ArgumentSigns signsOf(const std::string& symbolName) const;

  /// Entries whose index sets are not both empty.
  std::vector<const Entry*> constrained() const;

  const std::map<std::string, Entry>& entries() const { return d_entries; }
  bool empty() const { return d_entries.empty(); }

  /// Human-readable listing with 1-based positions, e.g. `f: ({1}, {2})`.
  std::string toString() const;

 private:
  std::map<std::string, Entry> d_entries;
};

}  // namespace monoinfer
