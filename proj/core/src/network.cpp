#include "monoinfer/network.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "monoinfer/errors.hpp"

namespace monoinfer {

namespace {

std::string
tupleString(const std::vector<Value>& v)
{
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

}  // namespace

std::string
toString(RegulationSign sign)
{
  switch (sign)
  {
    case RegulationSign::Monotone: return "mono";
    case RegulationSign::AntiMonotone: return "anti";
    case RegulationSign::Unknown: return "unknown";
  }
  return "?";
}

void
InferenceProblem::validate() const
{
  std::set<std::string> names;
  for (const NetworkVariable& v : variables)
  {
    if (v.name.empty() || isReservedName(v.name))
      throw SortError("invalid variable name '" + v.name + "'");
    if (!names.insert(v.name).second)
      throw SortError("duplicate variable '" + v.name + "'");
    if (v.domain.isInt() && v.domain.bounds())
    {
      const Bounds& b = *v.domain.bounds();
      if (b.lo != 0 || b.hi < 1)
        throw SortError("domain of '" + v.name + "' must be 0..k with k >= 1");
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const Regulation& r : regulations)
  {
    if (r.source >= variables.size() || r.target >= variables.size())
      throw SortError("regulation endpoint out of range");
    if (!edges.insert({r.source, r.target}).second)
    {
      throw SortError("duplicate regulation " + variables[r.source].name
                      + " -> " + variables[r.target].name);
    }
  }
  for (const FixedPointObservation& f : observations)
  {
    if (f.values.empty())
      throw SortError("observation '" + f.name + "' assigns nothing");
    for (const auto& [index, value] : f.values)
    {
      if (index >= variables.size())
        throw SortError("observation '" + f.name + "' names an unknown variable");
      auto range = variables[index].domain.range();
      if (range && !range->contains(value))
      {
        throw SortError("observation '" + f.name + "' assigns "
                        + std::to_string(value) + " to "
                        + variables[index].name + " outside its domain");
      }
    }
  }
}

std::optional<std::size_t>
InferenceProblem::indexOf(const std::string& name) const
{
  for (std::size_t i = 0; i < variables.size(); ++i)
  {
    if (variables[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t>
InferenceProblem::regulatorsOf(std::size_t target) const
{
  std::vector<std::size_t> out;
  for (const Regulation& r : regulations)
  {
    if (r.target == target) out.push_back(r.source);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const Regulation*
InferenceProblem::regulation(std::size_t source, std::size_t target) const
{
  for (const Regulation& r : regulations)
  {
    if (r.source == source && r.target == target) return &r;
  }
  return nullptr;
}

bool
InferenceProblem::bounded() const
{
  return std::all_of(variables.begin(), variables.end(),
                     [](const NetworkVariable& v) { return v.domain.range().has_value(); });
}

bool
InferenceProblem::allBoolean() const
{
  return std::all_of(variables.begin(), variables.end(),
                     [](const NetworkVariable& v) { return v.domain.isBool(); });
}

std::vector<Value>
domainValues(const Sort& domain)
{
  auto range = domain.range();
  if (!range) throw UsageError("unbounded domain has no finite value list");
  std::vector<Value> out;
  for (Value v = range->lo; v <= range->hi; ++v) out.push_back(v);
  return out;
}

Value
UpdateFunctionTable::at(const std::vector<Value>& args) const
{
  auto it = rows.find(args);
  if (it == rows.end())
    throw EvaluationError("table has no row " + tupleString(args));
  return it->second;
}

std::vector<std::vector<Value>>
gridOf(const std::vector<Sort>& domains)
{
  std::vector<std::vector<Value>> values;
  for (const Sort& s : domains) values.push_back(domainValues(s));
  std::vector<std::vector<Value>> out;
  std::vector<Value> row(domains.size());
  std::vector<std::size_t> digit(domains.size(), 0);
  for (;;)
  {
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = values[i][digit[i]];
    out.push_back(row);
    std::size_t i = digit.size();
    while (i > 0)
    {
      --i;
      if (++digit[i] < values[i].size()) break;
      digit[i] = 0;
      if (i == 0) return out;
    }
    if (digit.empty()) return out;
  }
}

namespace {

void
checkShape(const InferenceProblem& problem,
           const std::vector<UpdateFunctionTable>& tables)
{
  if (tables.size() != problem.variables.size())
    throw UsageError("expected one table per variable");
  for (std::size_t v = 0; v < tables.size(); ++v)
  {
    const UpdateFunctionTable& t = tables[v];
    if (t.variable != v || t.regulators != problem.regulatorsOf(v))
      throw UsageError("table " + std::to_string(v) + " has the wrong regulators");
    std::vector<Sort> sorts;
    for (std::size_t r : t.regulators) sorts.push_back(problem.variables[r].domain);
    for (const auto& row : gridOf(sorts))
    {
      if (!t.rows.count(row))
      {
        throw UsageError("table of " + problem.variables[v].name
                         + " misses row " + tupleString(row));
      }
    }
  }
}

}  // namespace

bool
extendsToFixedPoint(const InferenceProblem& problem,
                    const std::vector<UpdateFunctionTable>& tables,
                    const FixedPointObservation& observation,
                    std::vector<Value>* completion)
{
  const std::size_t n = problem.variables.size();
  std::vector<std::optional<Value>> state(n);
  for (const auto& [v, d] : observation.values) state[v] = d;
  std::vector<std::size_t> open;
  for (std::size_t v = 0; v < n; ++v)
  {
    if (!state[v]) open.push_back(v);
  }
  std::vector<std::vector<std::size_t>> regs(n);
  for (std::size_t v = 0; v < n; ++v) regs[v] = problem.regulatorsOf(v);

  // A variable can be checked once it and all its regulators are assigned.
  auto consistent = [&](std::size_t v) {
    if (!state[v]) return true;
    std::vector<Value> args;
    for (std::size_t r : regs[v])
    {
      if (!state[r]) return true;
      args.push_back(*state[r]);
    }
    return tables[v].at(args) == *state[v];
  };
  for (std::size_t v = 0; v < n; ++v)
  {
    if (!consistent(v)) return false;
  }

  std::vector<std::vector<std::size_t>> dependents(n);
  for (std::size_t v = 0; v < n; ++v)
  {
    dependents[v].push_back(v);
    for (std::size_t r : regs[v]) dependents[r].push_back(v);
  }

  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k == open.size()) return true;
    std::size_t v = open[k];
    for (Value d : domainValues(problem.variables[v].domain))
    {
      state[v] = d;
      bool ok = std::all_of(dependents[v].begin(), dependents[v].end(), consistent);
      if (ok && self(self, k + 1)) return true;
    }
    state[v].reset();
    return false;
  };
  if (!search(search, 0)) return false;
  if (completion)
  {
    completion->clear();
    for (const auto& s : state) completion->push_back(*s);
  }
  return true;
}

VerifyResult
verifySolution(const InferenceProblem& problem,
               const std::vector<UpdateFunctionTable>& tables)
{
  checkShape(problem, tables);
  for (std::size_t v = 0; v < tables.size(); ++v)
  {
    const UpdateFunctionTable& t = tables[v];
    const std::string& name = problem.variables[v].name;
    auto range = problem.variables[v].domain.range();
    for (const auto& [row, out] : t.rows)
    {
      if (range && !range->contains(out))
      {
        return VerifyResult::fail("f_" + name + tupleString(row) + " = "
                                  + std::to_string(out) + " is outside the domain");
      }
    }
    for (std::size_t i = 0; i < t.regulators.size(); ++i)
    {
      const Regulation* reg = problem.regulation(t.regulators[i], v);
      const std::string& regName = problem.variables[t.regulators[i]].name;
      bool differs = false;
      for (const auto& [row, out] : t.rows)
      {
        std::vector<Value> next = row;
        ++next[i];
        auto it = t.rows.find(next);
        if (it == t.rows.end()) continue;
        if (reg->sign == RegulationSign::Monotone && out > it->second)
        {
          return VerifyResult::fail("f_" + name + " is not monotone in " + regName
                                    + ": " + tupleString(row) + " vs "
                                    + tupleString(next));
        }
        if (reg->sign == RegulationSign::AntiMonotone && out < it->second)
        {
          return VerifyResult::fail("f_" + name + " is not anti-monotone in "
                                    + regName + ": " + tupleString(row) + " vs "
                                    + tupleString(next));
        }
        // Rows differing in position i only are connected through unit
        // steps, so comparing neighbours suffices for essentiality too.
        if (out != it->second) differs = true;
      }
      if (reg->essential && !differs)
      {
        return VerifyResult::fail("f_" + name + " does not depend on essential regulator "
                                  + regName);
      }
    }
  }
  for (const FixedPointObservation& f : problem.observations)
  {
    if (!extendsToFixedPoint(problem, tables, f))
      return VerifyResult::fail("observation " + f.name + " has no matching fixed point");
  }
  return VerifyResult::pass();
}

std::string
formatTables(const InferenceProblem& problem,
             const std::vector<UpdateFunctionTable>& tables)
{
  std::ostringstream os;
  for (const UpdateFunctionTable& t : tables)
  {
    os << "f_" << problem.variables[t.variable].name << "(";
    for (std::size_t i = 0; i < t.regulators.size(); ++i)
      os << (i ? "," : "") << problem.variables[t.regulators[i]].name;
    os << ")\n";
    for (const auto& [row, out] : t.rows)
      os << "  " << tupleString(row) << " -> " << out << "\n";
  }
  return os.str();
}

}  // namespace monoinfer
