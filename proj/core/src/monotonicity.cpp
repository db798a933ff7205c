#include "monoinfer/monotonicity.hpp"

#include <sstream>

#include "monoinfer/errors.hpp"

namespace monoinfer {

namespace {

void
printIndexSet(std::ostream& os, const std::set<std::size_t>& s)
{
  os << "{";
  bool first = true;
  for (std::size_t i : s)
  {
    os << (first ? "" : ",") << i + 1;
    first = false;
  }
  os << "}";
}

}  // namespace

void
MonotonicitySpec::set(SymbolRef symbol, ArgumentSigns signs)
{
  if (!symbol) throw SortError("monotonicity entry for a null symbol");
  if (!symbol->uninterpreted)
  {
    throw SortError("monotonicity requested for interpreted symbol "
                    + symbol->name);
  }
  for (const std::set<std::size_t>* s : {&signs.monotone, &signs.antitone})
  {
    for (std::size_t i : *s)
    {
      if (i >= symbol->arity())
      {
        throw SortError("argument position " + std::to_string(i + 1)
                        + " out of range for " + symbol->name);
      }
    }
  }
  for (std::size_t i : signs.monotone)
  {
    if (signs.antitone.count(i))
    {
      throw SortError("argument " + std::to_string(i + 1) + " of "
                      + symbol->name
                      + " is both monotone and anti-monotone");
    }
  }
  std::string name = symbol->name;
  d_entries.insert_or_assign(std::move(name),
                             Entry{std::move(symbol), std::move(signs)});
}

const MonotonicitySpec::Entry*
MonotonicitySpec::find(const std::string& symbolName) const
{
  auto it = d_entries.find(symbolName);
  return it == d_entries.end() ? nullptr : &it->second;
}

ArgumentSigns
MonotonicitySpec::signsOf(const std::string& symbolName) const
{
  const Entry* e = find(symbolName);
  return e ? e->signs : ArgumentSigns{};
}

std::vector<const MonotonicitySpec::Entry*>
MonotonicitySpec::constrained() const
{
  std::vector<const Entry*> out;
  for (const auto& [name, entry] : d_entries)
  {
    if (!entry.signs.empty()) out.push_back(&entry);
  }
  return out;
}

std::string
MonotonicitySpec::toString() const
{
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, entry] : d_entries)
  {
    os << (first ? "" : "; ") << name << ": (";
    printIndexSet(os, entry.signs.monotone);
    os << ", ";
    printIndexSet(os, entry.signs.antitone);
    os << ")";
    first = false;
  }
  return os.str();
}

}  // namespace monoinfer
