#include "monoinfer/harness.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "monoinfer/errors.hpp"
#include "monoinfer/problem_io.hpp"
#include "monoinfer/process_session.hpp"
#include "monoinfer/smtlib.hpp"

namespace monoinfer {

namespace {

using Clock = std::chrono::steady_clock;

double
millisSince(Clock::time_point start)
{
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void
fail(RunRecord& rec, FailureKind kind, std::string detail)
{
  rec.verdict.reset();
  rec.failure = kind;
  rec.detail = std::move(detail);
}

void
writeScript(const std::string& path, const EncodedProblem& encoded, const std::string& comment)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  EmitOptions opts;
  opts.comment = comment;
  out << emitSmtlib(Signature{}, encoded.assertions(), opts);
}

RunRecord
runTimed(const InferenceProblem& problem,
         const std::string& instance,
         const RunOptions& options,
         Clock::time_point start)
{
  RunRecord rec;
  rec.instance = instance;
  rec.strategy = options.strategy;
  try
  {
    NetworkEncoding enc = encodeInference(problem, options.encoding);
    EncodedProblem encoded;
    switch (options.strategy)
    {
      case Strategy::QuantIndividual:
        encoded = encodeQuantIndividual(enc.formula, enc.spec);
        break;
      case Strategy::QuantAggregated:
        encoded = encodeQuantAggregated(enc.formula, enc.spec);
        break;
      case Strategy::InstEager: encoded = encodeEager(enc.formula, enc.spec, options.lemmas); break;
      case Strategy::InstLazy:
        encoded.strategy = Strategy::InstLazy;
        encoded.base = enc.formula;
        break;
    }
    std::string command =
        options.solverCommand.empty() ? defaultSolverCommand() : options.solverCommand;
    ProcessSolverSession session(command, selectLogic(encoded.assertions()));
    auto spent = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    session.setTimeLimit(std::max(options.timeLimit - spent, std::chrono::milliseconds(1)));

    SolveOutcome outcome = options.strategy == Strategy::InstLazy
                               ? solveLazy(enc.formula, enc.spec, session, options.lemmas)
                               : solveEncoded(encoded, session);
    session.dispose();
    rec.lemmaCount = outcome.lemmaCount;
    rec.checkSatCount = outcome.checkSatCalls;

    if (!options.emitSmt2.empty())
    {
      if (options.strategy == Strategy::InstLazy) encoded.additions = outcome.assertedLemmas;
      writeScript(options.emitSmt2, encoded, instance + " " + toString(options.strategy));
    }

    const SolverVerdict& verdict = outcome.verdict;
    if (outcome.failure)
      fail(rec, FailureKind::Crash, *outcome.failure);
    else if (verdict.isUnknown() && verdict.reason() == "timeout")
      fail(rec, FailureKind::Timeout, "timeout");
    else
    {
      rec.verdict = verdict.isSat()     ? CheckResult::Sat
                    : verdict.isUnsat() ? CheckResult::Unsat
                                        : CheckResult::Unknown;
      if (verdict.isUnknown()) rec.detail = verdict.reason();
    }

    if (options.verify && verdict.isSat() && rec.verdict)
    {
      if (!problem.bounded())
      {
        rec.detail = "not verified: unbounded domain";
      }
      else
      {
        std::vector<UpdateFunctionTable> tables = decodeSolution(verdict.model(), problem, enc);
        VerifyResult check = verifySolution(problem, tables);
        rec.verified = check.ok;
        if (check.ok)
          rec.tables = std::move(tables);
        else
          fail(rec, FailureKind::Crash, "verification failed: " + check.violation);
      }
    }
  }
  catch (const SolverTimeout&)
  {
    fail(rec, FailureKind::Timeout, "timeout");
  }
  catch (const SolverError& e)
  {
    fail(rec, FailureKind::Crash, e.what());
  }
  catch (const Error& e)
  {
    fail(rec, FailureKind::Unsupported, e.what());
  }
  catch (const std::exception& e)
  {
    fail(rec, FailureKind::Crash, e.what());
  }
  rec.wallMs = millisSince(start);
  return rec;
}

std::string
csvField(const std::string& s)
{
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s)
  {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string
toString(FailureKind kind)
{
  switch (kind)
  {
    case FailureKind::None: return "";
    case FailureKind::Timeout: return "timeout";
    case FailureKind::Crash: return "crash";
    case FailureKind::Unsupported: return "unsupported";
  }
  return "?";
}

std::string
RunRecord::outcome() const
{
  return verdict ? toString(*verdict) : toString(failure);
}

RunRecord
runSingle(const InferenceProblem& problem, const std::string& instance, const RunOptions& options)
{
  return runTimed(problem, instance, options, Clock::now());
}

RunRecord
runSingleFile(const std::string& path, const RunOptions& options)
{
  auto start = Clock::now();
  std::string instance = std::filesystem::path(path).stem().string();
  InferenceProblem problem;
  try
  {
    problem = readProblemFile(path);
  }
  catch (const Error& e)
  {
    RunRecord rec;
    rec.instance = instance;
    rec.strategy = options.strategy;
    fail(rec, FailureKind::Unsupported, e.what());
    rec.wallMs = millisSince(start);
    return rec;
  }
  return runTimed(problem, instance, options, start);
}

std::vector<std::string>
problemFiles(const std::string& directory)
{
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(directory, ec))
  {
    if (entry.is_regular_file() && entry.path().extension() == ".problem")
      out.push_back(entry.path().string());
  }
  if (ec) throw UsageError("cannot list " + directory + ": " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RunRecord>
runBatch(const std::string& directory, const BatchOptions& options)
{
  return runBatch(problemFiles(directory), options);
}

std::vector<RunRecord>
runBatch(const std::vector<std::string>& files, const BatchOptions& options)
{
  const std::size_t perFile = options.strategies.size();
  const std::size_t jobs = files.size() * perFile;
  std::vector<RunRecord> records(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++)
    {
      RunOptions run = options.run;
      run.strategy = options.strategies[j % perFile];
      run.emitSmt2.clear();
      records[j] = runSingleFile(files[j / perFile], run);
    }
  };
  std::size_t threads = std::clamp<std::size_t>(options.parallelism, 1, std::max<std::size_t>(jobs, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return records;
}

void
writeRecordsCsv(std::ostream& out, const std::vector<RunRecord>& records)
{
  out << "instance,strategy,verdict,failure,wall_ms,lemma_count,check_sat_count,verified\n";
  for (const RunRecord& r : records)
  {
    out << csvField(r.instance) << ',' << toString(r.strategy) << ','
        << (r.verdict ? toString(*r.verdict) : "") << ',' << toString(r.failure) << ','
        << std::fixed << std::setprecision(3) << r.wallMs << ',' << r.lemmaCount << ','
        << r.checkSatCount << ',' << (r.verified ? (*r.verified ? "yes" : "no") : "") << '\n';
  }
}

std::map<Strategy, std::vector<CumulativePoint>>
cumulativeSolved(const std::vector<RunRecord>& records)
{
  std::map<Strategy, std::vector<double>> times;
  for (const RunRecord& r : records)
  {
    auto& t = times[r.strategy];
    if (r.solved()) t.push_back(r.wallMs);
  }
  std::map<Strategy, std::vector<CumulativePoint>> out;
  for (auto& [strategy, t] : times)
  {
    std::sort(t.begin(), t.end());
    auto& curve = out[strategy];
    for (std::size_t i = 0; i < t.size(); ++i) curve.push_back({t[i], i + 1});
  }
  return out;
}

std::size_t
solvedWithin(const std::vector<CumulativePoint>& curve, double timeMs)
{
  std::size_t n = 0;
  for (const CumulativePoint& p : curve)
  {
    if (p.timeMs <= timeMs) n = p.solved;
  }
  return n;
}

void
writeCumulativeCsv(std::ostream& out,
                   const std::map<Strategy, std::vector<CumulativePoint>>& curves)
{
  out << "strategy,time_ms,solved\n";
  for (const auto& [strategy, curve] : curves)
  {
    out << toString(strategy) << ",0.000,0\n";
    for (const CumulativePoint& p : curve)
    {
      out << toString(strategy) << ',' << std::fixed << std::setprecision(3) << p.timeMs << ','
          << p.solved << '\n';
    }
  }
}

}  // namespace monoinfer
