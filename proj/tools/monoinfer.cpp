// monoinfer: command-line front end (solve, generate, bench, oracle).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "monoinfer/errors.hpp"
#include "monoinfer/generator.hpp"
#include "monoinfer/harness.hpp"
#include "monoinfer/oracle.hpp"
#include "monoinfer/problem_io.hpp"

using namespace monoinfer;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

// sysexits-style codes
constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;
constexpr int kExitNoInput = 66;

int
exitCodeOf(const RunRecord& r)
{
  if (!r.verdict) return kExitUnknown;
  switch (*r.verdict)
  {
    case CheckResult::Sat: return kExitSat;
    case CheckResult::Unsat: return kExitUnsat;
    default: return kExitUnknown;
  }
}

json
tablesJson(const InferenceProblem& p, const std::vector<UpdateFunctionTable>& tables)
{
  json out = json::array();
  for (const UpdateFunctionTable& t : tables)
  {
    json regs = json::array();
    for (std::size_t r : t.regulators) regs.push_back(p.variables[r].name);
    json rows = json::array();
    for (const auto& [args, value] : t.rows) rows.push_back({{"args", args}, {"value", value}});
    out.push_back({{"variable", p.variables[t.variable].name}, {"regulators", regs}, {"rows", rows}});
  }
  return out;
}

json
recordJson(const RunRecord& r)
{
  json j = {{"instance", r.instance},
            {"strategy", toString(r.strategy)},
            {"outcome", r.outcome()},
            {"wall_ms", r.wallMs},
            {"lemma_count", r.lemmaCount},
            {"check_sat_count", r.checkSatCount}};
  j["verdict"] = r.verdict ? json(toString(*r.verdict)) : json(nullptr);
  j["failure"] = r.failure == FailureKind::None ? json(nullptr) : json(toString(r.failure));
  if (!r.detail.empty()) j["detail"] = r.detail;
  j["verified"] = r.verified ? json(*r.verified) : json(nullptr);
  return j;
}

// Loads a problem up front so that missing and malformed files get their own
// exit codes; returns 0 on success.
int
loadProblem(const std::string& path, InferenceProblem& out)
{
  if (!fs::is_regular_file(path))
  {
    std::cerr << "monoinfer: cannot read " << path << "\n";
    return kExitNoInput;
  }
  try
  {
    out = readProblemFile(path);
  }
  catch (const ParseError& e)
  {
    std::cerr << path << ":" << e.what() << "\n";
    return kExitParse;
  }
  return 0;
}

std::vector<Strategy>
parseStrategies(const std::string& list)
{
  if (list == "all") return allStrategies();
  std::vector<Strategy> out;
  std::stringstream in(list);
  std::string name;
  while (std::getline(in, name, ','))
  {
    if (!name.empty()) out.push_back(parseStrategy(name));
  }
  if (out.empty()) throw UsageError("no strategy given");
  return out;
}

struct SolveArgs
{
  std::string problem;
  std::string encoding = "instantiated-lazy";
  std::string solverCmd;
  long long timeoutMs = 600000;
  std::string emitSmt2;
  bool verify = false;
  bool noSimplify = false;
  bool json = false;
};

int
runSolve(const SolveArgs& a)
{
  InferenceProblem problem;
  if (int rc = loadProblem(a.problem, problem)) return rc;
  RunOptions o;
  o.strategy = parseStrategy(a.encoding);
  o.solverCommand = a.solverCmd;
  o.timeLimit = std::chrono::milliseconds(a.timeoutMs);
  o.verify = a.verify;
  o.encoding.simplify = !a.noSimplify;
  o.emitSmt2 = a.emitSmt2;
  RunRecord r = runSingleFile(a.problem, o);

  if (a.json)
  {
    json j = recordJson(r);
    if (!r.tables.empty()) j["tables"] = tablesJson(problem, r.tables);
    std::cout << j.dump(2) << "\n";
  }
  else
  {
    std::cout << r.outcome();
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
    std::cerr << std::fixed << std::setprecision(1) << "time " << r.wallMs << " ms, "
              << r.lemmaCount << " lemmas, " << r.checkSatCount << " check-sat\n";
    if (!r.tables.empty()) std::cout << formatTables(problem, r.tables);
  }
  if (r.verified == std::optional<bool>(false)) return kExitUnknown;
  return exitCodeOf(r);
}

struct GenerateArgs
{
  std::uint64_t seed = 1;
  GeneratorParams params;
  std::string mode = "planted";
  std::string out;
  std::size_t count = 1;
  std::string outDir;
};

int
runGenerate(GenerateArgs a)
{
  a.params.mode = parseGenerationMode(a.mode);
  a.params.validate();
  if (a.count > 1 && a.outDir.empty()) throw UsageError("--count needs --out-dir");
  if (!a.outDir.empty())
  {
    fs::create_directories(a.outDir);
    for (std::size_t i = 0; i < a.count; ++i)
    {
      std::uint64_t seed = a.seed + i;
      std::ostringstream name;
      name << "inst" << std::setw(4) << std::setfill('0') << seed << ".problem";
      std::ofstream(fs::path(a.outDir) / name.str())
          << writeProblem(generateInstance(seed, a.params).problem);
    }
    return 0;
  }
  std::string text = writeProblem(generateInstance(a.seed, a.params).problem);
  if (a.out.empty() || a.out == "-")
    std::cout << text;
  else
    std::ofstream(a.out) << text;
  return 0;
}

struct BenchArgs
{
  std::string dir;
  std::string encodings = "all";
  std::size_t parallel = 16;
  long long timeoutMs = 600000;
  std::string csvOut;
  std::string cumulativeOut;
  std::string solverCmd;
  bool verify = false;
  bool noSimplify = false;
};

int
runBench(const BenchArgs& a)
{
  if (!fs::is_directory(a.dir))
  {
    std::cerr << "monoinfer: not a directory: " << a.dir << "\n";
    return kExitNoInput;
  }
  BatchOptions b;
  b.strategies = parseStrategies(a.encodings);
  b.parallelism = a.parallel;
  b.run.solverCommand = a.solverCmd;
  b.run.timeLimit = std::chrono::milliseconds(a.timeoutMs);
  b.run.verify = a.verify;
  b.run.encoding.simplify = !a.noSimplify;
  std::vector<RunRecord> records = runBatch(a.dir, b);

  if (a.csvOut.empty() || a.csvOut == "-")
    writeRecordsCsv(std::cout, records);
  else
  {
    std::ofstream out(a.csvOut);
    writeRecordsCsv(out, records);
  }
  auto curves = cumulativeSolved(records);
  if (!a.cumulativeOut.empty())
  {
    std::ofstream out(a.cumulativeOut);
    writeCumulativeCsv(out, curves);
  }
  for (Strategy s : b.strategies)
  {
    std::size_t total = 0, solved = 0;
    for (const RunRecord& r : records)
    {
      if (r.strategy != s) continue;
      ++total;
      solved += r.solved();
    }
    std::cerr << toString(s) << ": " << solved << "/" << total << " solved\n";
  }
  return 0;
}

struct OracleArgs
{
  std::string problem;
  bool count = false;
  std::uint64_t budget = std::uint64_t{1} << 20;
};

int
runOracle(const OracleArgs& a)
{
  InferenceProblem problem;
  if (int rc = loadProblem(a.problem, problem)) return rc;
  OracleOptions o;
  o.budget = a.budget;
  try
  {
    OracleVerdict v = oracleInference(problem, o);
    std::cout << (v.sat ? "sat" : "unsat") << "\n";
    if (a.count)
    {
      try
      {
        std::uint64_t n = countSolutions(problem, o);
        std::cout << "solutions " << n << "\n";
      }
      catch (const BudgetExceeded& e)
      {
        std::cout << "solutions unknown (" << e.what() << ")\n";
      }
    }
    if (v.sat) std::cout << formatTables(problem, v.witness);
    return v.sat ? kExitSat : kExitUnsat;
  }
  catch (const BudgetExceeded& e)
  {
    std::cout << "unknown (" << e.what() << ")\n";
    return kExitUnknown;
  }
}

}  // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Network inference under monotonicity constraints"};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* s = app.add_subcommand("solve", "Solve one problem file");
  s->add_option("--problem", solve.problem, "Problem file")->required();
  s->add_option("--encoding", solve.encoding, "Monotonicity encoding")
      ->check(CLI::IsMember({"quantified-individual", "quantified-aggregated",
                             "instantiated-eager", "instantiated-lazy"}))
      ->capture_default_str();
  s->add_option("--solver-cmd", solve.solverCmd,
                "Solver command line (default: $MONOINFER_SOLVER or 'z3 -in')");
  s->add_option("--timeout-ms", solve.timeoutMs)->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--emit-smt2", solve.emitSmt2, "Write the SMT-LIB script here");
  s->add_flag("--verify", solve.verify, "Decode and check Sat answers");
  s->add_flag("--no-simplify", solve.noSimplify, "Disable constraint simplifications");
  s->add_flag("--json", solve.json, "Machine-readable output");

  GenerateArgs gen;
  CLI::App* g = app.add_subcommand("generate", "Generate random inference problems");
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--vars", gen.params.nVars)->capture_default_str();
  g->add_option("--max-arity", gen.params.maxArity)->capture_default_str();
  g->add_option("--domain", gen.params.domainSize, "Domain size; 2 is Boolean")
      ->capture_default_str();
  g->add_option("--sign-ratio", gen.params.signRatio)->capture_default_str();
  g->add_option("--essential-ratio", gen.params.essentialRatio)->capture_default_str();
  g->add_option("--observations", gen.params.nObservations)->capture_default_str();
  g->add_option("--observe-ratio", gen.params.observeRatio)->capture_default_str();
  g->add_option("--mode", gen.mode)
      ->check(CLI::IsMember({"planted", "perturbed"}))
      ->capture_default_str();
  g->add_option("--out", gen.out, "Output file (default stdout)");
  g->add_option("--count", gen.count, "Number of instances, seeds seed..seed+count-1")
      ->check(CLI::PositiveNumber);
  g->add_option("--out-dir", gen.outDir, "Directory for instNNNN.problem files");

  BenchArgs bench;
  CLI::App* b = app.add_subcommand("bench", "Run every strategy on a directory of problems");
  b->add_option("--dir", bench.dir, "Directory of *.problem files")->required();
  b->add_option("--encodings", bench.encodings, "Comma-separated strategies or 'all'")
      ->capture_default_str();
  b->add_option("--parallel", bench.parallel)->check(CLI::PositiveNumber)->capture_default_str();
  b->add_option("--timeout-ms", bench.timeoutMs)->check(CLI::PositiveNumber)->capture_default_str();
  b->add_option("--csv-out", bench.csvOut, "Per-run CSV (default stdout)");
  b->add_option("--cumulative-out", bench.cumulativeOut, "Cumulative solved-count CSV");
  b->add_option("--solver-cmd", bench.solverCmd);
  b->add_flag("--verify", bench.verify);
  b->add_flag("--no-simplify", bench.noSimplify);

  OracleArgs oracle;
  CLI::App* o = app.add_subcommand("oracle", "Exhaustive check of a tiny problem");
  o->add_option("--problem", oracle.problem)->required();
  o->add_flag("--count", oracle.count, "Also count all solutions");
  o->add_option("--budget", oracle.budget, "Search budget per variable")->capture_default_str();

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp& e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError& e)
  {
    app.exit(e);
    return kExitUsage;
  }

  try
  {
    if (*s) return runSolve(solve);
    if (*g) return runGenerate(gen);
    if (*b) return runBench(bench);
    if (*o) return runOracle(oracle);
  }
  catch (const UsageError& e)
  {
    std::cerr << "monoinfer: " << e.what() << "\n";
    return kExitUsage;
  }
  catch (const Error& e)
  {
    std::cerr << "monoinfer: " << e.what() << "\n";
    return kExitUnknown;
  }
  return kExitUsage;
}
