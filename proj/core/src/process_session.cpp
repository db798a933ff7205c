#include "monoinfer/process_session.hpp"

#include <cerrno>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include "monoinfer/errors.hpp"

extern char** environ;

namespace monoinfer {

namespace {

void
ignoreSigpipe()
{
  static std::once_flag once;
  std::call_once(once, [] { std::signal(SIGPIPE, SIG_IGN); });
}

std::vector<std::string>
splitCommand(const std::string& command)
{
  std::istringstream in(command);
  std::vector<std::string> words;
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

}  // namespace

std::string
defaultSolverCommand()
{
  const char* env = std::getenv(kSolverEnvVar);
  if (env && *env) return env;
  return kDefaultSolverCommand;
}

ProcessSolverSession::ProcessSolverSession(const std::string& command,
                                           const std::string& logic)
{
  ignoreSigpipe();
  std::vector<std::string> words = splitCommand(command);
  if (words.empty()) throw SolverError("empty solver command");

  int toChild[2];
  int fromChild[2];
  if (pipe2(toChild, O_CLOEXEC) != 0)
    throw SolverError(std::string("pipe: ") + std::strerror(errno));
  if (pipe2(fromChild, O_CLOEXEC) != 0)
  {
    close(toChild[0]);
    close(toChild[1]);
    throw SolverError(std::string("pipe: ") + std::strerror(errno));
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, toChild[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, fromChild[1], STDOUT_FILENO);
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  std::vector<char*> argv;
  for (std::string& w : words) argv.push_back(w.data());
  argv.push_back(nullptr);
  int rc = posix_spawnp(&d_pid, argv[0], &actions, &attr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  close(toChild[0]);
  close(fromChild[1]);
  if (rc != 0)
  {
    close(toChild[1]);
    close(fromChild[0]);
    d_pid = -1;
    d_dead = true;
    throw SolverError("cannot start solver '" + command
                      + "': " + std::strerror(rc));
  }
  d_toSolver = toChild[1];
  d_fromSolver = fromChild[0];

  send("(set-option :print-success false)");
  send("(set-option :produce-models true)");
  send("(set-logic " + (logic.empty() ? std::string("ALL") : logic) + ")");
}

ProcessSolverSession::~ProcessSolverSession()
{
  dispose();
}

void
ProcessSolverSession::requireAlive() const
{
  if (d_dead) throw SolverError("solver process is no longer running");
}

void
ProcessSolverSession::send(const std::string& command)
{
  requireAlive();
  d_transcript += command;
  d_transcript += '\n';
  std::string line = command + "\n";
  std::size_t done = 0;
  while (done < line.size())
  {
    ssize_t n = write(d_toSolver, line.data() + done, line.size() - done);
    if (n < 0)
    {
      if (errno == EINTR) continue;
      terminate();
      throw SolverError("solver process closed its input");
    }
    done += static_cast<std::size_t>(n);
  }
}

Sexpr
ProcessSolverSession::receive()
{
  requireAlive();
  Sexpr out;
  char buffer[65536];
  while (!d_reader.next(out))
  {
    int timeout = -1;
    if (d_deadline)
    {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          *d_deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0)
      {
        terminate();
        throw SolverTimeout();
      }
      timeout = static_cast<int>(std::min<long long>(left.count(), 1 << 30));
    }
    pollfd pfd{d_fromSolver, POLLIN, 0};
    int ready = poll(&pfd, 1, timeout);
    if (ready < 0)
    {
      if (errno == EINTR) continue;
      terminate();
      throw SolverError(std::string("poll: ") + std::strerror(errno));
    }
    if (ready == 0) continue;
    ssize_t n = read(d_fromSolver, buffer, sizeof buffer);
    if (n < 0)
    {
      if (errno == EINTR) continue;
      terminate();
      throw SolverError(std::string("read: ") + std::strerror(errno));
    }
    if (n == 0)
    {
      terminate();
      throw SolverError("solver process exited unexpectedly");
    }
    try
    {
      d_reader.feed(std::string_view(buffer, static_cast<std::size_t>(n)));
    }
    catch (const ParseError& e)
    {
      terminate();
      throw SolverError(std::string("malformed solver response: ") + e.what());
    }
  }
  if (!out.atom && !out.items.empty() && out.items[0].isAtom("error"))
  {
    std::string message =
        out.items.size() > 1 ? out.items[1].text : out.toString();
    throw SolverError("solver error: " + message);
  }
  return out;
}

void
ProcessSolverSession::terminate()
{
  if (d_dead) return;
  d_dead = true;
  if (d_toSolver >= 0) close(d_toSolver);
  if (d_fromSolver >= 0) close(d_fromSolver);
  d_toSolver = d_fromSolver = -1;
  if (d_pid > 0)
  {
    kill(-d_pid, SIGKILL);
    kill(d_pid, SIGKILL);
    int status = 0;
    while (waitpid(d_pid, &status, 0) < 0 && errno == EINTR)
    {
    }
    d_pid = -1;
  }
}

void
ProcessSolverSession::doDeclareFunction(const FunctionSymbol& symbol)
{
  send(declareFunction(symbol));
}

void
ProcessSolverSession::doDeclareConstant(const Term& constant)
{
  send(monoinfer::declareConstant(constant));
}

void
ProcessSolverSession::doAssert(const Term& formula)
{
  send("(assert " + formula.toString() + ")");
}

CheckResult
ProcessSolverSession::doCheck(std::string& reason)
{
  try
  {
    send("(check-sat)");
    Sexpr answer = receive();
    if (answer.isAtom("sat")) return CheckResult::Sat;
    if (answer.isAtom("unsat")) return CheckResult::Unsat;
    if (answer.isAtom("unknown"))
    {
      reason = "unknown";
      send("(get-info :reason-unknown)");
      Sexpr info = receive();
      if (!info.atom && info.items.size() == 2)
      {
        std::string text = info.items[1].text;
        if (text.size() >= 2 && text.front() == '"') text = text.substr(1, text.size() - 2);
        reason = text;
      }
      return CheckResult::Unknown;
    }
    throw SolverError("unexpected check-sat answer " + answer.toString());
  }
  catch (const SolverTimeout&)
  {
    reason = "timeout";
    return CheckResult::Unknown;
  }
}

std::vector<Value>
ProcessSolverSession::doValues(const std::vector<Term>& terms)
{
  std::string command = "(get-value (";
  for (std::size_t i = 0; i < terms.size(); ++i)
  {
    if (i) command += ' ';
    command += terms[i].toString();
  }
  command += "))";
  send(command);
  Sexpr answer = receive();
  if (answer.atom || answer.items.size() != terms.size())
    throw SolverError("malformed get-value response " + answer.toString());
  std::vector<Value> values;
  values.reserve(terms.size());
  for (const Sexpr& pair : answer.items)
  {
    if (pair.atom || pair.items.size() != 2)
      throw SolverError("malformed get-value entry " + pair.toString());
    values.push_back(parseValue(pair.items[1]));
  }
  return values;
}

Model
ProcessSolverSession::doModel(const Signature& signature)
{
  send("(get-model)");
  Sexpr answer = receive();
  return parseModelResponse(answer.toString(), &signature);
}

void
ProcessSolverSession::doSetTimeLimit(std::chrono::milliseconds limit)
{
  d_deadline = std::chrono::steady_clock::now() + limit;
}

void
ProcessSolverSession::doDispose()
{
  if (d_dead) return;
  try
  {
    send("(exit)");
  }
  catch (const SolverError&)
  {
  }
  terminate();
}

}  // namespace monoinfer
