#include "monoinfer/problem_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "monoinfer/errors.hpp"

namespace monoinfer {

namespace {

enum class Tok
{
  Ident,
  Int,
  Colon,
  Arrow,
  Equals,
  DotDot,
  LBracket,
  RBracket,
  End
};

struct Token
{
  Tok kind = Tok::End;
  std::string text;
  std::size_t column = 0;
};

const char*
describe(Tok t)
{
  switch (t)
  {
    case Tok::Ident: return "a name";
    case Tok::Int: return "an integer";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'->'";
    case Tok::Equals: return "'='";
    case Tok::DotDot: return "'..'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::End: return "end of line";
  }
  return "?";
}

class Line
{
 public:
  Line(std::string_view text, std::size_t number) : d_number(number)
  {
    std::size_t i = 0;
    while (i < text.size())
    {
      char c = text[i];
      std::size_t col = i + 1;
      if (c == '#') break;
      if (std::isspace(static_cast<unsigned char>(c)))
      {
        ++i;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      {
        std::size_t j = i;
        while (j < text.size()
               && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'
                   || text[j] == '-'))
        {
          // '-' is allowed inside words such as "monoinfer-problem" but
          // never swallows an arrow.
          if (text[j] == '-' && j + 1 < text.size() && text[j + 1] == '>') break;
          ++j;
        }
        d_tokens.push_back({Tok::Ident, std::string(text.substr(i, j - i)), col});
        i = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))
          || (c == '-' && i + 1 < text.size()
              && std::isdigit(static_cast<unsigned char>(text[i + 1]))))
      {
        std::size_t j = i + 1;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        d_tokens.push_back({Tok::Int, std::string(text.substr(i, j - i)), col});
        i = j;
        continue;
      }
      if (c == '-' && i + 1 < text.size() && text[i + 1] == '>')
      {
        d_tokens.push_back({Tok::Arrow, "->", col});
        i += 2;
        continue;
      }
      if (c == '.' && i + 1 < text.size() && text[i + 1] == '.')
      {
        d_tokens.push_back({Tok::DotDot, "..", col});
        i += 2;
        continue;
      }
      Tok t = c == ':' ? Tok::Colon : c == '=' ? Tok::Equals : c == '[' ? Tok::LBracket
              : c == ']' ? Tok::RBracket : Tok::End;
      if (t == Tok::End) throw ParseError(number, col, std::string("unexpected character '") + c + "'");
      d_tokens.push_back({t, std::string(1, c), col});
      ++i;
    }
    d_endColumn = text.size() + 1;
  }

  bool empty() const { return d_tokens.empty(); }
  bool atEnd() const { return d_pos >= d_tokens.size(); }
  std::size_t number() const { return d_number; }

  const Token& peek() const
  {
    static const Token end;
    return atEnd() ? end : d_tokens[d_pos];
  }

  std::size_t column() const { return atEnd() ? d_endColumn : d_tokens[d_pos].column; }

  [[noreturn]] void fail(const std::string& message) const
  {
    throw ParseError(d_number, column(), message);
  }

  Token expect(Tok kind)
  {
    if (peek().kind != kind || atEnd())
    {
      fail(std::string("expected ") + describe(kind) + ", found "
           + (atEnd() ? std::string("end of line") : "'" + peek().text + "'"));
    }
    return d_tokens[d_pos++];
  }

  bool accept(Tok kind)
  {
    if (atEnd() || peek().kind != kind) return false;
    ++d_pos;
    return true;
  }

  void expectEnd()
  {
    if (!atEnd()) fail("unexpected '" + peek().text + "'");
  }

 private:
  std::vector<Token> d_tokens;
  std::size_t d_pos = 0;
  std::size_t d_number;
  std::size_t d_endColumn = 1;
};

Value
toValue(const Token& t, std::size_t line)
{
  Value v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size())
    throw ParseError(line, t.column, "integer out of range");
  return v;
}

void
checkName(const Token& t, std::size_t line)
{
  if (t.text.find('-') != std::string::npos)
    throw ParseError(line, t.column, "'" + t.text + "' is not a valid name");
}

enum class Section
{
  None,
  Variables,
  Regulations,
  Observations
};

class Parser
{
 public:
  InferenceProblem run(std::string_view text)
  {
    std::size_t number = 0;
    bool sawFormat = false;
    std::size_t start = 0;
    while (start <= text.size())
    {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(start, end - start);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      ++number;
      Line line(raw, number);
      start = end + 1;
      if (line.empty()) continue;
      if (!sawFormat)
      {
        formatLine(line);
        sawFormat = true;
        continue;
      }
      if (line.peek().kind == Tok::LBracket)
      {
        sectionLine(line);
        continue;
      }
      switch (d_section)
      {
        case Section::None: line.fail("expected a section header");
        case Section::Variables: variableLine(line); break;
        case Section::Regulations: regulationLine(line); break;
        case Section::Observations: observationLine(line); break;
      }
    }
    if (!sawFormat) throw ParseError(number ? number : 1, 1, "missing format line");
    try
    {
      d_problem.validate();
    }
    catch (const SortError& e)
    {
      throw ParseError(number ? number : 1, 1, e.what());
    }
    return std::move(d_problem);
  }

 private:
  void formatLine(Line& line)
  {
    Token kw = line.expect(Tok::Ident);
    if (kw.text != "format") throw ParseError(line.number(), kw.column, "expected 'format'");
    Token name = line.expect(Tok::Ident);
    if (name.text != "monoinfer-problem")
      throw ParseError(line.number(), name.column, "unknown format '" + name.text + "'");
    Token version = line.expect(Tok::Int);
    if (version.text != "1")
      throw ParseError(line.number(), version.column, "unsupported format version " + version.text);
    line.expectEnd();
  }

  void sectionLine(Line& line)
  {
    line.expect(Tok::LBracket);
    Token name = line.expect(Tok::Ident);
    line.expect(Tok::RBracket);
    line.expectEnd();
    Section next = name.text == "variables"      ? Section::Variables
                   : name.text == "regulations"  ? Section::Regulations
                   : name.text == "observations" ? Section::Observations
                                                 : Section::None;
    if (next == Section::None)
      throw ParseError(line.number(), name.column, "unknown section '" + name.text + "'");
    if (!d_seen.insert(next).second)
      throw ParseError(line.number(), name.column, "section '" + name.text + "' repeated");
    if (next != Section::Variables && !d_seen.count(Section::Variables))
      throw ParseError(line.number(), name.column, "[variables] must come first");
    d_section = next;
  }

  std::size_t variable(Line& line)
  {
    Token t = line.expect(Tok::Ident);
    auto index = d_problem.indexOf(t.text);
    if (!index) throw ParseError(line.number(), t.column, "unknown variable '" + t.text + "'");
    return *index;
  }

  void variableLine(Line& line)
  {
    Token name = line.expect(Tok::Ident);
    checkName(name, line.number());
    if (d_problem.indexOf(name.text))
      throw ParseError(line.number(), name.column, "duplicate variable '" + name.text + "'");
    line.expect(Tok::Colon);
    Token kind = line.expect(Tok::Ident);
    NetworkVariable v;
    v.name = name.text;
    if (kind.text == "bool")
    {
      v.domain = Sort::boolean();
    }
    else if (kind.text == "int")
    {
      v.domain = Sort::integer();
      if (!line.atEnd())
      {
        std::size_t col = line.column();
        Value lo = toValue(line.expect(Tok::Int), line.number());
        line.expect(Tok::DotDot);
        Value hi = toValue(line.expect(Tok::Int), line.number());
        if (lo != 0 || hi < 1)
          throw ParseError(line.number(), col, "integer domains must be 0..k with k >= 1");
        v.domain = Sort::bounded(lo, hi);
      }
    }
    else
    {
      throw ParseError(line.number(), kind.column, "unknown domain '" + kind.text + "'");
    }
    line.expectEnd();
    d_problem.variables.push_back(std::move(v));
  }

  void regulationLine(Line& line)
  {
    std::size_t col = line.column();
    Regulation r;
    r.source = variable(line);
    line.expect(Tok::Arrow);
    r.target = variable(line);
    line.expect(Tok::Colon);
    Token sign = line.expect(Tok::Ident);
    if (sign.text == "mono")
      r.sign = RegulationSign::Monotone;
    else if (sign.text == "anti")
      r.sign = RegulationSign::AntiMonotone;
    else if (sign.text == "unknown")
      r.sign = RegulationSign::Unknown;
    else
      throw ParseError(line.number(), sign.column, "unknown sign '" + sign.text + "'");
    if (!line.atEnd())
    {
      Token flag = line.expect(Tok::Ident);
      if (flag.text == "essential")
        r.essential = true;
      else if (flag.text != "optional")
        throw ParseError(line.number(), flag.column, "unknown flag '" + flag.text + "'");
    }
    line.expectEnd();
    if (d_problem.regulation(r.source, r.target))
      throw ParseError(line.number(), col, "duplicate regulation");
    d_problem.regulations.push_back(r);
  }

  void observationLine(Line& line)
  {
    Token name = line.expect(Tok::Ident);
    checkName(name, line.number());
    if (!d_observationNames.insert(name.text).second)
      throw ParseError(line.number(), name.column, "duplicate observation '" + name.text + "'");
    line.expect(Tok::Colon);
    FixedPointObservation f;
    f.name = name.text;
    do
    {
      std::size_t col = line.column();
      std::size_t v = variable(line);
      line.expect(Tok::Equals);
      Value value = 0;
      std::size_t valueCol = line.column();
      if (line.peek().kind == Tok::Ident
          && (line.peek().text == "true" || line.peek().text == "false"))
        value = line.expect(Tok::Ident).text == "true";
      else
        value = toValue(line.expect(Tok::Int), line.number());
      auto range = d_problem.variables[v].domain.range();
      if (range && !range->contains(value))
      {
        throw ParseError(line.number(), valueCol,
                         "value " + std::to_string(value) + " is outside the domain of "
                             + d_problem.variables[v].name);
      }
      if (!f.values.emplace(v, value).second)
        throw ParseError(line.number(), col, "variable assigned twice");
    } while (!line.atEnd());
    d_problem.observations.push_back(std::move(f));
  }

  InferenceProblem d_problem;
  Section d_section = Section::None;
  std::set<Section> d_seen;
  std::set<std::string> d_observationNames;
};

}  // namespace

InferenceProblem
parseProblem(std::string_view text)
{
  return Parser().run(text);
}

InferenceProblem
readProblemFile(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseProblem(buffer.str());
}

std::string
writeProblem(const InferenceProblem& problem)
{
  std::ostringstream os;
  os << "format monoinfer-problem 1\n\n[variables]\n";
  for (const NetworkVariable& v : problem.variables)
  {
    os << v.name << " : ";
    if (v.domain.isBool())
      os << "bool";
    else if (v.domain.bounds())
      os << "int " << v.domain.bounds()->lo << ".." << v.domain.bounds()->hi;
    else
      os << "int";
    os << "\n";
  }
  os << "\n[regulations]\n";
  for (const Regulation& r : problem.regulations)
  {
    os << problem.variables[r.source].name << " -> " << problem.variables[r.target].name
       << " : " << toString(r.sign) << (r.essential ? " essential" : " optional") << "\n";
  }
  os << "\n[observations]\n";
  for (const FixedPointObservation& f : problem.observations)
  {
    os << f.name << " :";
    for (const auto& [v, d] : f.values) os << " " << problem.variables[v].name << "=" << d;
    os << "\n";
  }
  return os.str();
}

}  // namespace monoinfer
