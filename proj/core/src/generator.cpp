#include "monoinfer/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "monoinfer/errors.hpp"

namespace monoinfer {

namespace {

// Draws are derived from the raw engine output only, so instances do not
// depend on the standard library's distribution implementations.
class Rng
{
 public:
  explicit Rng(std::uint64_t seed) : d_engine(seed) {}

  std::uint64_t below(std::uint64_t n) { return n ? d_engine() % n : 0; }
  double unit() { return static_cast<double>(d_engine() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  template <class T>
  void shuffle(std::vector<T>& v)
  {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 d_engine;
};

constexpr std::size_t kMaxRows = std::size_t{1} << 16;
constexpr std::size_t kMaxEnumeratedStates = std::size_t{1} << 16;

double
power(std::size_t base, std::size_t exp)
{
  return std::pow(static_cast<double>(base), static_cast<double>(exp));
}

}  // namespace

std::string
toString(GenerationMode mode)
{
  return mode == GenerationMode::Planted ? "planted" : "perturbed";
}

GenerationMode
parseGenerationMode(const std::string& name)
{
  if (name == "planted") return GenerationMode::Planted;
  if (name == "perturbed") return GenerationMode::Perturbed;
  throw UsageError("unknown generation mode '" + name + "'");
}

void
GeneratorParams::validate() const
{
  auto ratio = [](double r, const char* name) {
    if (!(r >= 0.0 && r <= 1.0)) throw UsageError(std::string(name) + " must lie in [0, 1]");
  };
  if (nVars < 1 || nVars > 10000) throw UsageError("variable count must lie in 1..10000");
  if (domainSize < 2 || domainSize > 64) throw UsageError("domain size must lie in 2..64");
  if (power(domainSize, std::min(maxArity, nVars)) > static_cast<double>(kMaxRows))
    throw UsageError("domainSize^maxArity exceeds 65536 table rows");
  ratio(signRatio, "sign ratio");
  ratio(essentialRatio, "essential ratio");
  ratio(observeRatio, "observe ratio");
  if (!(observeRatio > 0.0)) throw UsageError("observe ratio must be positive");
  if (nObservations > 10000) throw UsageError("observation count must lie in 0..10000");
  if (mode == GenerationMode::Perturbed && nObservations == 0)
    throw UsageError("perturbed mode needs at least one observation");
}

GeneratedInstance
generateInstance(std::uint64_t seed, const GeneratorParams& params)
{
  params.validate();
  Rng rng(seed);
  const std::size_t n = params.nVars;
  const Value hi = static_cast<Value>(params.domainSize) - 1;
  const Sort domain = params.domainSize == 2 ? Sort::boolean() : Sort::bounded(0, hi);

  GeneratedInstance out;
  InferenceProblem& p = out.problem;
  for (std::size_t v = 0; v < n; ++v) p.variables.push_back({"v" + std::to_string(v + 1), domain});

  // Planted fixed point and per-edge weights of the clamped linear model
  // f_v(x) = clamp(s_v + sum_i w_i * sigma_i * (x_i - s_i)).
  std::vector<Value> planted(n);
  for (Value& s : planted) s = static_cast<Value>(rng.below(params.domainSize));

  struct Edge
  {
    std::size_t source;
    RegulationSign sign;
    Value coefficient;
  };
  std::vector<std::vector<Edge>> edges(n);
  const std::size_t maxArity = std::min(params.maxArity, n);
  for (std::size_t v = 0; v < n; ++v)
  {
    std::size_t k = maxArity == 0 ? 0 : 1 + rng.below(maxArity);
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
    std::vector<std::size_t> sources(pool.begin(), pool.begin() + static_cast<long>(k));
    std::sort(sources.begin(), sources.end());
    for (std::size_t src : sources)
    {
      RegulationSign sign = RegulationSign::Unknown;
      if (rng.chance(params.signRatio))
        sign = rng.chance(0.5) ? RegulationSign::Monotone : RegulationSign::AntiMonotone;
      Value weight = 1 + static_cast<Value>(rng.below(2));
      Value direction = sign == RegulationSign::Monotone       ? 1
                        : sign == RegulationSign::AntiMonotone ? -1
                        : rng.chance(0.5)                      ? 1
                                                               : -1;
      edges[v].push_back({src, sign, weight * direction});
    }
  }

  auto evalTruth = [&](std::size_t v, const std::vector<Value>& args) {
    Value sum = planted[v];
    for (std::size_t i = 0; i < args.size(); ++i)
      sum += edges[v][i].coefficient * (args[i] - planted[edges[v][i].source]);
    return std::clamp<Value>(sum, 0, hi);
  };

  for (std::size_t v = 0; v < n; ++v)
  {
    UpdateFunctionTable t;
    t.variable = v;
    for (const Edge& e : edges[v]) t.regulators.push_back(e.source);
    std::vector<Sort> sorts(t.regulators.size(), domain);
    for (auto& row : gridOf(sorts))
    {
      Value y = evalTruth(v, row);
      t.rows.emplace(std::move(row), y);
    }
    for (std::size_t i = 0; i < edges[v].size(); ++i)
    {
      bool depends = false;
      for (const auto& [row, y] : t.rows)
      {
        if (row[i] == hi) continue;
        std::vector<Value> next = row;
        ++next[i];
        if (t.rows.at(next) != y)
        {
          depends = true;
          break;
        }
      }
      Regulation r;
      r.source = edges[v][i].source;
      r.target = v;
      r.sign = edges[v][i].sign;
      r.essential = depends && rng.chance(params.essentialRatio);
      p.regulations.push_back(r);
    }
    out.groundTruth.push_back(std::move(t));
  }

  auto step = [&](const std::vector<Value>& state) {
    std::vector<Value> next(n);
    for (std::size_t v = 0; v < n; ++v)
    {
      std::vector<Value> args;
      for (std::size_t r : out.groundTruth[v].regulators) args.push_back(state[r]);
      next[v] = out.groundTruth[v].rows.at(args);
    }
    return next;
  };

  // Fixed points: the planted one first, then others found either by
  // exhaustive enumeration (small state spaces) or by iterating the
  // dynamics from random states.
  std::vector<std::vector<Value>> fixedPoints{planted};
  std::set<std::vector<Value>> seen{planted};
  std::vector<std::vector<Value>> others;
  if (power(params.domainSize, n) <= static_cast<double>(kMaxEnumeratedStates))
  {
    std::vector<Sort> sorts(n, domain);
    for (const auto& state : gridOf(sorts))
    {
      if (!seen.count(state) && step(state) == state) others.push_back(state);
    }
  }
  else
  {
    const std::size_t trials = 20 * std::max<std::size_t>(1, params.nObservations);
    for (std::size_t t = 0; t < trials; ++t)
    {
      std::vector<Value> state(n);
      for (Value& x : state) x = static_cast<Value>(rng.below(params.domainSize));
      for (std::size_t i = 0; i < 2 * n + 10; ++i)
      {
        std::vector<Value> next = step(state);
        if (next == state)
        {
          if (seen.insert(state).second) others.push_back(state);
          break;
        }
        state = std::move(next);
      }
    }
  }
  rng.shuffle(others);
  fixedPoints.insert(fixedPoints.end(), others.begin(), others.end());

  const std::size_t count = std::min(params.nObservations, fixedPoints.size());
  for (std::size_t k = 0; k < count; ++k)
  {
    FixedPointObservation f;
    f.name = "F" + std::to_string(k + 1);
    for (std::size_t v = 0; v < n; ++v)
    {
      if (params.observeRatio >= 1.0 || rng.chance(params.observeRatio))
        f.values.emplace(v, fixedPoints[k][v]);
    }
    if (f.values.empty())
    {
      std::size_t v = rng.below(n);
      f.values.emplace(v, fixedPoints[k][v]);
    }
    p.observations.push_back(std::move(f));
  }

  if (params.mode == GenerationMode::Perturbed && !p.observations.empty())
  {
    FixedPointObservation& f = p.observations[rng.below(p.observations.size())];
    auto it = f.values.begin();
    std::advance(it, static_cast<long>(rng.below(f.values.size())));
    const auto size = static_cast<Value>(params.domainSize);
    it->second = (it->second + 1 + static_cast<Value>(rng.below(params.domainSize - 1))) % size;
  }
  p.validate();
  return out;
}

}  // namespace monoinfer
