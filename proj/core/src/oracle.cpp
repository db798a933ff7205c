#include "monoinfer/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>

#include "monoinfer/errors.hpp"
#include "monoinfer/formula.hpp"
#include "monoinfer/model.hpp"

namespace monoinfer {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

class Budget
{
 public:
  explicit Budget(std::uint64_t limit) : d_limit(limit) {}

  void tick()
  {
    if (++d_used > d_limit)
      throw BudgetExceeded("oracle budget of " + std::to_string(d_limit)
                           + " steps exhausted");
  }

 private:
  std::uint64_t d_limit;
  std::uint64_t d_used = 0;
};

/// All functions from a finite grid into an integer interval, with signed
/// axes. Rows are laid out so that every row comes after the rows it
/// dominates: monotone axes ascend, antitone axes descend.
struct TableSpace
{
  std::vector<std::vector<Value>> axes;
  std::vector<int> sign;  // +1 monotone, -1 antitone, 0 unconstrained
  Value outLo = 0;
  Value outHi = 1;

  std::vector<std::vector<Value>> rows;
  std::map<std::vector<Value>, std::size_t> index;
  std::vector<std::vector<std::size_t>> below;   // immediate dominated rows
  std::vector<std::vector<std::size_t>> stepUp;  // row with axis k one higher

  void build()
  {
    const std::size_t n = axes.size();
    rows.clear();
    index.clear();
    std::vector<std::size_t> digit(n, 0);
    for (;;)
    {
      std::vector<Value> row(n);
      for (std::size_t i = 0; i < n; ++i)
      {
        std::size_t d = sign[i] < 0 ? axes[i].size() - 1 - digit[i] : digit[i];
        row[i] = axes[i][d];
      }
      index.emplace(row, rows.size());
      rows.push_back(std::move(row));
      std::size_t i = n;
      bool carry = true;
      while (carry && i > 0)
      {
        --i;
        if (++digit[i] < axes[i].size())
          carry = false;
        else
          digit[i] = 0;
      }
      if (carry) break;
    }
    below.assign(rows.size(), {});
    stepUp.assign(rows.size(), std::vector<std::size_t>(n, npos));
    for (std::size_t r = 0; r < rows.size(); ++r)
    {
      for (std::size_t k = 0; k < n; ++k)
      {
        std::vector<Value> next = rows[r];
        ++next[k];
        auto it = index.find(next);
        if (it == index.end()) continue;
        stepUp[r][k] = it->second;
        if (sign[k] > 0) below[it->second].push_back(r);
        if (sign[k] < 0) below[r].push_back(it->second);
      }
    }
  }

  bool dominated(const std::vector<Value>& p, const std::vector<Value>& q) const
  {
    for (std::size_t i = 0; i < p.size(); ++i)
    {
      if (sign[i] > 0 ? p[i] > q[i] : sign[i] < 0 ? p[i] < q[i] : p[i] != q[i])
        return false;
    }
    return true;
  }
};

using Forced = std::map<std::size_t, Value>;  // row index -> output

/// Enumerate the monotone tables of `space` that agree with `forced` and
/// depend on every axis in `essential`, in a fixed order. The callback
/// returns false to stop; enumerate returns true if it was stopped.
bool
enumerate(const TableSpace& space,
          const Forced& forced,
          const std::vector<std::size_t>& essential,
          Budget& budget,
          const std::function<bool(const std::vector<Value>&)>& visit)
{
  const std::size_t R = space.rows.size();
  for (const auto& [r, v] : forced)
  {
    if (v < space.outLo || v > space.outHi) return false;
  }
  std::vector<Value> lo(R, space.outLo);
  std::vector<Value> hi(R, space.outHi);
  for (const auto& [a, va] : forced)
  {
    for (const auto& [b, vb] : forced)
    {
      if (a != b && space.dominated(space.rows[a], space.rows[b]) && va > vb)
        return false;
    }
    for (std::size_t r = 0; r < R; ++r)
    {
      if (space.dominated(space.rows[a], space.rows[r])) lo[r] = std::max(lo[r], va);
      if (space.dominated(space.rows[r], space.rows[a])) hi[r] = std::min(hi[r], va);
    }
  }

  std::vector<Value> f(R, 0);
  auto essentialOk = [&] {
    for (std::size_t k : essential)
    {
      bool differs = false;
      for (std::size_t r = 0; r < R && !differs; ++r)
      {
        std::size_t up = space.stepUp[r][k];
        differs = up != npos && f[up] != f[r];
      }
      if (!differs) return false;
    }
    return true;
  };
  auto assign = [&](auto&& self, std::size_t r) -> bool {
    if (r == R)
    {
      budget.tick();
      return essentialOk() && !visit(f);
    }
    Value low = lo[r];
    for (std::size_t b : space.below[r]) low = std::max(low, f[b]);
    for (Value v = low; v <= hi[r]; ++v)
    {
      budget.tick();
      f[r] = v;
      if (self(self, r + 1)) return true;
    }
    return false;
  };
  return assign(assign, 0);
}

std::uint64_t
checkedMul(std::uint64_t a, std::uint64_t b)
{
  if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
    throw BudgetExceeded("solution count exceeds 64 bits");
  return a * b;
}

/// Monotone tables over `space` agreeing with `forced` that may ignore the
/// axes in `dropped`: counted on the reduced grid, slice by slice over the
/// unconstrained axes.
std::uint64_t
countIndependentOf(const TableSpace& space,
                   const std::map<std::vector<Value>, Value>& forcedRows,
                   const std::vector<bool>& dropped,
                   Budget& budget)
{
  std::vector<std::size_t> signedAxes;
  std::vector<std::size_t> freeAxes;
  for (std::size_t i = 0; i < space.axes.size(); ++i)
  {
    if (dropped[i]) continue;
    (space.sign[i] ? signedAxes : freeAxes).push_back(i);
  }
  TableSpace slice;
  slice.outLo = space.outLo;
  slice.outHi = space.outHi;
  for (std::size_t i : signedAxes)
  {
    slice.axes.push_back(space.axes[i]);
    slice.sign.push_back(space.sign[i]);
  }
  slice.build();

  // slice key (free-axis values) -> forced rows of that slice
  std::map<std::vector<Value>, std::map<std::vector<Value>, Value>> perSlice;
  for (const auto& [row, v] : forcedRows)
  {
    std::vector<Value> key;
    std::vector<Value> local;
    for (std::size_t i : freeAxes) key.push_back(row[i]);
    for (std::size_t i : signedAxes) local.push_back(row[i]);
    auto [it, fresh] = perSlice[key].emplace(local, v);
    if (!fresh && it->second != v) return 0;
  }

  std::map<Forced, std::uint64_t> memo;
  auto countSlice = [&](const Forced& forced) {
    auto it = memo.find(forced);
    if (it != memo.end()) return it->second;
    std::uint64_t n = 0;
    enumerate(slice, forced, {}, budget, [&](const std::vector<Value>&) {
      ++n;
      return true;
    });
    memo.emplace(forced, n);
    return n;
  };

  std::uint64_t sliceCount = 1;
  for (std::size_t i : freeAxes) sliceCount = checkedMul(sliceCount, space.axes[i].size());
  std::uint64_t total = 1;
  std::uint64_t unforcedSlices = sliceCount - perSlice.size();
  for (const auto& [key, rows] : perSlice)
  {
    Forced forced;
    for (const auto& [local, v] : rows) forced.emplace(slice.index.at(local), v);
    total = checkedMul(total, countSlice(forced));
    if (total == 0) return 0;
  }
  std::uint64_t open = countSlice({});
  for (std::uint64_t s = 0; s < unforcedSlices; ++s)
  {
    total = checkedMul(total, open);
    if (total == 0) return 0;
  }
  return total;
}

/// Inclusion-exclusion over the essential axes.
std::uint64_t
countTables(const TableSpace& space,
            const std::map<std::vector<Value>, Value>& forcedRows,
            const std::vector<std::size_t>& essential,
            Budget& budget)
{
  // Positive and negative terms are kept apart to stay unsigned.
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;
  const std::size_t k = essential.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask)
  {
    std::vector<bool> dropped(space.axes.size(), false);
    int parity = 0;
    for (std::size_t j = 0; j < k; ++j)
    {
      if (mask >> j & 1)
      {
        dropped[essential[j]] = true;
        parity ^= 1;
      }
    }
    std::map<std::vector<Value>, Value> projected;
    bool clash = false;
    for (const auto& [row, v] : forcedRows)
    {
      std::vector<Value> key = row;
      for (std::size_t i = 0; i < row.size(); ++i)
      {
        if (dropped[i]) key[i] = 0;
      }
      auto [it, fresh] = projected.emplace(key, v);
      if (!fresh && it->second != v) clash = true;
    }
    if (clash) continue;
    std::uint64_t n = countIndependentOf(space, projected, dropped, budget);
    std::uint64_t& acc = parity ? minus : plus;
    if (acc > std::numeric_limits<std::uint64_t>::max() - n)
      throw BudgetExceeded("solution count exceeds 64 bits");
    acc += n;
  }
  if (minus > plus) throw Error("internal error: negative solution count");
  return plus - minus;
}

struct VariableSpace
{
  TableSpace space;
  std::vector<std::size_t> regulators;
  std::vector<std::size_t> essential;
};

VariableSpace
makeSpace(const InferenceProblem& p, std::size_t v)
{
  VariableSpace out;
  out.regulators = p.regulatorsOf(v);
  for (std::size_t i = 0; i < out.regulators.size(); ++i)
  {
    const Regulation* r = p.regulation(out.regulators[i], v);
    out.space.axes.push_back(domainValues(p.variables[out.regulators[i]].domain));
    out.space.sign.push_back(r->sign == RegulationSign::Monotone       ? 1
                             : r->sign == RegulationSign::AntiMonotone ? -1
                                                                       : 0);
    if (r->essential) out.essential.push_back(i);
  }
  Bounds range = *p.variables[v].domain.range();
  out.space.outLo = range.lo;
  out.space.outHi = range.hi;
  out.space.build();
  return out;
}

void
requireBounded(const InferenceProblem& p)
{
  p.validate();
  if (!p.bounded()) throw UsageError("the oracle needs bounded domains");
}

UpdateFunctionTable
toTable(std::size_t v, const VariableSpace& vs, const std::vector<Value>& outputs)
{
  UpdateFunctionTable t;
  t.variable = v;
  t.regulators = vs.regulators;
  for (std::size_t r = 0; r < outputs.size(); ++r)
    t.rows.emplace(vs.space.rows[r], outputs[r]);
  return t;
}

/// Rows of f_v fixed by a (possibly completed) state.
std::vector<Value>
rowOf(const VariableSpace& vs, const std::vector<Value>& state)
{
  std::vector<Value> row;
  for (std::size_t r : vs.regulators) row.push_back(state[r]);
  return row;
}

}  // namespace

OracleVerdict
oracleInference(const InferenceProblem& problem, const OracleOptions& options)
{
  requireBounded(problem);
  const std::size_t n = problem.variables.size();
  Budget budget(checkedMul(options.budget, std::max<std::size_t>(1, n)));
  std::vector<VariableSpace> spaces;
  for (std::size_t v = 0; v < n; ++v) spaces.push_back(makeSpace(problem, v));

  // Each observation is completed to a full state; given completions for
  // all observations the variables decouple into independent row
  // constraints.
  struct Slot
  {
    std::size_t observation;
    std::size_t variable;
    std::vector<Value> values;
  };
  std::vector<Slot> slots;
  std::vector<std::vector<Value>> states;
  for (std::size_t k = 0; k < problem.observations.size(); ++k)
  {
    std::vector<Value> state(n, 0);
    for (std::size_t v = 0; v < n; ++v)
    {
      auto it = problem.observations[k].values.find(v);
      if (it != problem.observations[k].values.end())
        state[v] = it->second;
      else
        slots.push_back({k, v, domainValues(problem.variables[v].domain)});
    }
    states.push_back(std::move(state));
  }

  std::map<std::pair<std::size_t, Forced>, std::optional<std::vector<Value>>> memo;
  auto firstTable = [&](std::size_t v, const Forced& forced) {
    auto key = std::make_pair(v, forced);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::optional<std::vector<Value>> found;
    enumerate(spaces[v].space, forced, spaces[v].essential, budget,
              [&](const std::vector<Value>& f) {
                found = f;
                return false;
              });
    memo.emplace(key, found);
    return found;
  };

  std::vector<std::size_t> digit(slots.size(), 0);
  for (;;)
  {
    budget.tick();
    for (std::size_t s = 0; s < slots.size(); ++s)
      states[slots[s].observation][slots[s].variable] = slots[s].values[digit[s]];

    std::vector<Forced> forced(n);
    bool clash = false;
    for (std::size_t v = 0; v < n && !clash; ++v)
    {
      for (const std::vector<Value>& state : states)
      {
        std::size_t row = spaces[v].space.index.at(rowOf(spaces[v], state));
        auto [it, fresh] = forced[v].emplace(row, state[v]);
        if (!fresh && it->second != state[v])
        {
          clash = true;
          break;
        }
      }
    }
    if (!clash)
    {
      std::vector<UpdateFunctionTable> witness;
      for (std::size_t v = 0; v < n; ++v)
      {
        auto f = firstTable(v, forced[v]);
        if (!f) break;
        witness.push_back(toTable(v, spaces[v], *f));
      }
      if (witness.size() == n) return {true, std::move(witness)};
    }

    std::size_t i = slots.size();
    bool carry = true;
    while (carry && i > 0)
    {
      --i;
      if (++digit[i] < slots[i].values.size())
        carry = false;
      else
        digit[i] = 0;
    }
    if (carry) break;
  }
  return {false, {}};
}

std::uint64_t
countSolutions(const InferenceProblem& problem, const OracleOptions& options)
{
  requireBounded(problem);
  const std::size_t n = problem.variables.size();
  Budget budget(checkedMul(options.budget, std::max<std::size_t>(1, n)));
  std::vector<VariableSpace> spaces;
  for (std::size_t v = 0; v < n; ++v) spaces.push_back(makeSpace(problem, v));

  // Rows pinned by observations covering a variable and all its regulators.
  std::vector<std::map<std::vector<Value>, Value>> pinned(n);
  for (std::size_t v = 0; v < n; ++v)
  {
    for (const FixedPointObservation& f : problem.observations)
    {
      if (!f.values.count(v)) continue;
      std::vector<Value> row;
      bool covered = true;
      for (std::size_t r : spaces[v].regulators)
      {
        auto it = f.values.find(r);
        if (it == f.values.end())
        {
          covered = false;
          break;
        }
        row.push_back(it->second);
      }
      if (!covered) continue;
      auto [it, fresh] = pinned[v].emplace(row, f.values.at(v));
      if (!fresh && it->second != f.values.at(v)) return 0;
    }
  }

  bool allTotal = std::all_of(problem.observations.begin(), problem.observations.end(),
                              [&](const FixedPointObservation& f) { return f.total(n); });
  if (allTotal)
  {
    std::uint64_t total = 1;
    for (std::size_t v = 0; v < n && total; ++v)
      total = checkedMul(total, countTables(spaces[v].space, pinned[v], spaces[v].essential, budget));
    return total;
  }

  // Partial observations couple the variables: enumerate every candidate
  // table per variable and check each combination.
  std::vector<std::vector<std::vector<Value>>> candidates(n);
  for (std::size_t v = 0; v < n; ++v)
  {
    Forced forced;
    for (const auto& [row, value] : pinned[v])
      forced.emplace(spaces[v].space.index.at(row), value);
    enumerate(spaces[v].space, forced, spaces[v].essential, budget,
              [&](const std::vector<Value>& f) {
                candidates[v].push_back(f);
                return true;
              });
    if (candidates[v].empty()) return 0;
  }
  std::vector<UpdateFunctionTable> tables(n);
  std::uint64_t count = 0;
  auto combine = [&](auto&& self, std::size_t v) -> void {
    if (v == n)
    {
      budget.tick();
      for (const FixedPointObservation& f : problem.observations)
      {
        if (!extendsToFixedPoint(problem, tables, f)) return;
      }
      ++count;
      return;
    }
    for (const auto& f : candidates[v])
    {
      tables[v] = toTable(v, spaces[v], f);
      self(self, v + 1);
    }
  };
  combine(combine, 0);
  return count;
}

namespace {

class GridInterpretation : public Interpretation
{
 public:
  std::map<std::string, Value> constants;
  std::map<std::string, const std::map<std::vector<Value>, Value>*> tables;

  Value constantValue(const Term& constant) const override
  {
    auto it = constants.find(constant.name());
    if (it == constants.end())
      throw EvaluationError("no value for constant " + constant.name());
    return it->second;
  }

  Value applyFunction(const FunctionSymbol& symbol,
                      const std::vector<Value>& args) const override
  {
    auto t = tables.find(symbol.name);
    if (t == tables.end()) throw EvaluationError("no table for " + symbol.name);
    auto it = t->second->find(args);
    if (it == t->second->end())
      throw UsageError("argument of " + symbol.name + " leaves the oracle grid");
    return it->second;
  }
};

std::vector<Value>
valuesOf(const Sort& sort, Bounds grid)
{
  std::vector<Value> out;
  if (sort.isBool()) return {0, 1};
  for (Value v = grid.lo; v <= grid.hi; ++v) out.push_back(v);
  return out;
}

}  // namespace

bool
oracleMonoSat(const Term& phi,
              const MonotonicitySpec& spec,
              Bounds grid,
              const OracleOptions& options)
{
  if (grid.lo > grid.hi) throw UsageError("empty oracle grid");
  Budget budget(options.budget);

  std::vector<Term> constants = collectConstants(phi);
  std::vector<SymbolRef> symbols = collectSymbols(phi);

  std::vector<TableSpace> spaces;
  std::vector<std::vector<std::map<std::vector<Value>, Value>>> choices;
  for (const SymbolRef& f : symbols)
  {
    TableSpace space;
    ArgumentSigns signs = spec.signsOf(f->name);
    for (std::size_t i = 0; i < f->arity(); ++i)
    {
      space.axes.push_back(valuesOf(f->argSorts[i], grid));
      space.sign.push_back(signs.monotone.count(i) ? 1 : signs.antitone.count(i) ? -1 : 0);
    }
    std::vector<Value> out = valuesOf(f->resultSort, grid);
    space.outLo = out.front();
    space.outHi = out.back();
    space.build();
    std::vector<std::map<std::vector<Value>, Value>> tables;
    enumerate(space, {}, {}, budget, [&](const std::vector<Value>& values) {
      std::map<std::vector<Value>, Value> t;
      for (std::size_t r = 0; r < values.size(); ++r) t.emplace(space.rows[r], values[r]);
      tables.push_back(std::move(t));
      return true;
    });
    choices.push_back(std::move(tables));
    spaces.push_back(std::move(space));
  }

  std::vector<std::vector<Value>> constantValues;
  for (const Term& c : constants) constantValues.push_back(valuesOf(c.sort(), grid));

  GridInterpretation interp;
  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k < constants.size())
    {
      for (Value v : constantValues[k])
      {
        interp.constants[constants[k].name()] = v;
        if (self(self, k + 1)) return true;
      }
      return false;
    }
    std::size_t s = k - constants.size();
    if (s < symbols.size())
    {
      for (const auto& table : choices[s])
      {
        interp.tables[symbols[s]->name] = &table;
        if (self(self, k + 1)) return true;
      }
      return false;
    }
    budget.tick();
    return holds(phi, interp);
  };
  return search(search, 0);
}

}  // namespace monoinfer
