#include "monoinfer/smtlib.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "monoinfer/errors.hpp"
#include "monoinfer/formula.hpp"

namespace monoinfer {

namespace {

const char*
sortName(const Sort& s)
{
  return s.isBool() ? "Bool" : "Int";
}

bool
hasIntegers(const Term& t)
{
  if (t.sort().isInt()) return true;
  for (const BoundVar& b : t.bound())
  {
    if (b.sort.isInt()) return true;
  }
  if (t.isApply())
  {
    for (const Sort& s : t.symbol()->argSorts)
    {
      if (s.isInt()) return true;
    }
  }
  return std::any_of(t.args().begin(), t.args().end(), hasIntegers);
}

/// Position after the expression starting at `pos`, or npos if incomplete.
/// Leading whitespace and comments are skipped.
std::size_t
scanDatum(std::string_view s, std::size_t pos, std::size_t& start)
{
  auto skipBlank = [&](std::size_t p) {
    while (p < s.size())
    {
      if (std::isspace(static_cast<unsigned char>(s[p])))
        ++p;
      else if (s[p] == ';')
      {
        while (p < s.size() && s[p] != '\n') ++p;
      }
      else
        break;
    }
    return p;
  };
  pos = skipBlank(pos);
  start = pos;
  if (pos >= s.size()) return std::string_view::npos;
  int depth = 0;
  while (pos < s.size())
  {
    char c = s[pos];
    if (c == '(')
    {
      ++depth;
      ++pos;
    }
    else if (c == ')')
    {
      --depth;
      ++pos;
      if (depth < 0) return pos;
      if (depth == 0) return pos;
    }
    else if (c == '|')
    {
      std::size_t end = s.find('|', pos + 1);
      if (end == std::string_view::npos) return std::string_view::npos;
      pos = end + 1;
      if (depth == 0) return pos;
    }
    else if (c == '"')
    {
      std::size_t p = pos + 1;
      for (;;)
      {
        p = s.find('"', p);
        if (p == std::string_view::npos) return std::string_view::npos;
        if (p + 1 < s.size() && s[p + 1] == '"')
        {
          p += 2;
          continue;
        }
        if (p + 1 == s.size()) return std::string_view::npos;
        break;
      }
      pos = p + 1;
      if (depth == 0) return pos;
    }
    else if (c == ';')
    {
      std::size_t end = s.find('\n', pos);
      if (end == std::string_view::npos) return std::string_view::npos;
      pos = end;
    }
    else if (std::isspace(static_cast<unsigned char>(c)))
    {
      ++pos;
    }
    else
    {
      std::size_t p = pos;
      while (p < s.size() && !std::isspace(static_cast<unsigned char>(s[p]))
             && s[p] != '(' && s[p] != ')' && s[p] != ';' && s[p] != '|'
             && s[p] != '"')
      {
        ++p;
      }
      // An atom at top level is only complete once a delimiter follows.
      if (depth == 0 && p == s.size()) return std::string_view::npos;
      pos = p;
      if (depth == 0) return pos;
    }
  }
  return std::string_view::npos;
}

class Parser
{
 public:
  explicit Parser(std::string_view text) : d_text(text) {}

  std::vector<Sexpr> all()
  {
    std::vector<Sexpr> out;
    skip();
    while (d_pos < d_text.size())
    {
      out.push_back(one());
      skip();
    }
    return out;
  }

 private:
  void skip()
  {
    while (d_pos < d_text.size())
    {
      char c = d_text[d_pos];
      if (c == ';')
      {
        while (d_pos < d_text.size() && d_text[d_pos] != '\n') advance();
      }
      else if (std::isspace(static_cast<unsigned char>(c)))
        advance();
      else
        break;
    }
  }

  void advance()
  {
    if (d_text[d_pos] == '\n')
    {
      ++d_line;
      d_col = 1;
    }
    else
      ++d_col;
    ++d_pos;
  }

  [[noreturn]] void fail(const std::string& msg)
  {
    throw ParseError(d_line, d_col, msg);
  }

  Sexpr one()
  {
    skip();
    if (d_pos >= d_text.size()) fail("unexpected end of input");
    char c = d_text[d_pos];
    if (c == ')') fail("unexpected ')'");
    if (c == '(')
    {
      advance();
      Sexpr list;
      list.atom = false;
      for (;;)
      {
        skip();
        if (d_pos >= d_text.size()) fail("unterminated list");
        if (d_text[d_pos] == ')')
        {
          advance();
          return list;
        }
        list.items.push_back(one());
      }
    }
    Sexpr a;
    if (c == '|')
    {
      advance();
      while (d_pos < d_text.size() && d_text[d_pos] != '|')
      {
        a.text.push_back(d_text[d_pos]);
        advance();
      }
      if (d_pos >= d_text.size()) fail("unterminated quoted symbol");
      advance();
      return a;
    }
    if (c == '"')
    {
      a.text.push_back('"');
      advance();
      for (;;)
      {
        if (d_pos >= d_text.size()) fail("unterminated string literal");
        char d = d_text[d_pos];
        advance();
        if (d == '"')
        {
          if (d_pos < d_text.size() && d_text[d_pos] == '"')
          {
            a.text.push_back('"');
            advance();
            continue;
          }
          break;
        }
        a.text.push_back(d);
      }
      a.text.push_back('"');
      return a;
    }
    while (d_pos < d_text.size())
    {
      char d = d_text[d_pos];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')'
          || d == ';' || d == '|' || d == '"')
      {
        break;
      }
      a.text.push_back(d);
      advance();
    }
    return a;
  }

  std::string_view d_text;
  std::size_t d_pos = 0;
  std::size_t d_line = 1;
  std::size_t d_col = 1;
};

struct TypedValue
{
  Value value;
  bool boolean;
};

std::optional<TypedValue>
tryValue(const Sexpr& e)
{
  if (e.atom)
  {
    if (e.text == "true") return TypedValue{1, true};
    if (e.text == "false") return TypedValue{0, true};
    if (!e.text.empty()
        && std::all_of(e.text.begin(), e.text.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    {
      try
      {
        return TypedValue{std::stoll(e.text), false};
      }
      catch (const std::out_of_range&)
      {
        return std::nullopt;
      }
    }
    return std::nullopt;
  }
  if (e.items.size() == 2 && e.items[0].isAtom("-"))
  {
    auto inner = tryValue(e.items[1]);
    if (inner && !inner->boolean) return TypedValue{-inner->value, false};
  }
  return std::nullopt;
}

Sort
sortFromSexpr(const Sexpr& e, std::string_view raw)
{
  if (e.isAtom("Bool")) return Sort::boolean();
  if (e.isAtom("Int")) return Sort::integer();
  throw SolverError("unsupported sort " + e.toString() + " in model: "
                    + std::string(raw));
}

class ModelBuilder
{
 public:
  ModelBuilder(std::string_view raw, const Signature* known)
      : d_raw(raw), d_known(known)
  {
  }

  void item(const Sexpr& e)
  {
    if (e.atom) unsupported("unexpected atom " + e.text);
    if (!e.items.empty() && e.items[0].isAtom("model"))
    {
      for (std::size_t i = 1; i < e.items.size(); ++i) item(e.items[i]);
      return;
    }
    if (!e.items.empty() && e.items[0].isAtom("define-fun"))
    {
      defineFun(e);
      return;
    }
    if (e.items.size() == 2 && !e.items[0].isAtom("-") && tryValue(e.items[1]))
    {
      valuePair(e.items[0], *tryValue(e.items[1]));
      return;
    }
    for (const Sexpr& child : e.items) item(child);
  }

  Model finish()
  {
    for (auto& [name, table] : d_tables)
    {
      if (!d_hasDefault[name])
      {
        Value lo = 0;
        bool first = true;
        for (const auto& [args, v] : table.points)
        {
          lo = first ? v : std::min(lo, v);
          first = false;
        }
        table.defaultValue = lo;
      }
      d_model.setTable(table);
    }
    return d_model;
  }

 private:
  [[noreturn]] void unsupported(const std::string& why) const
  {
    throw SolverError("unsupported model syntax (" + why + "): "
                      + std::string(d_raw));
  }

  SymbolRef knownSymbol(const std::string& name) const
  {
    if (!d_known) return nullptr;
    for (const SymbolRef& f : d_known->functions)
    {
      if (f->name == name) return f;
    }
    return nullptr;
  }

  FunctionTable& tableFor(const SymbolRef& symbol)
  {
    auto [it, inserted] = d_tables.try_emplace(symbol->name);
    if (inserted) it->second.symbol = symbol;
    return it->second;
  }

  void valuePair(const Sexpr& term, TypedValue value)
  {
    if (term.atom)
    {
      d_model.setConstant(term.text, value.value);
      return;
    }
    if (term.items.empty() || !term.items[0].atom)
      unsupported("value of a non-application term");
    const std::string& name = term.items[0].text;
    std::vector<Value> args;
    std::vector<Sort> sorts;
    for (std::size_t i = 1; i < term.items.size(); ++i)
    {
      auto v = tryValue(term.items[i]);
      if (!v) unsupported("non-literal argument in value pair");
      args.push_back(v->value);
      sorts.push_back(v->boolean ? Sort::boolean() : Sort::integer());
    }
    SymbolRef symbol = knownSymbol(name);
    if (!symbol)
    {
      symbol = makeSymbol(name, sorts,
                          value.boolean ? Sort::boolean() : Sort::integer());
    }
    tableFor(symbol).points.insert_or_assign(std::move(args), value.value);
  }

  void defineFun(const Sexpr& e)
  {
    if (e.items.size() != 5 || !e.items[1].atom || e.items[2].atom)
      unsupported("malformed define-fun");
    const std::string& name = e.items[1].text;
    const Sexpr& params = e.items[2];
    const Sexpr& body = e.items[4];
    if (params.items.empty())
    {
      auto v = tryValue(body);
      if (!v) unsupported("constant " + name + " without a literal value");
      d_model.setConstant(name, v->value);
      return;
    }
    std::vector<std::string> paramNames;
    std::vector<Sort> sorts;
    for (const Sexpr& p : params.items)
    {
      if (p.atom || p.items.size() != 2 || !p.items[0].atom)
        unsupported("malformed parameter list");
      paramNames.push_back(p.items[0].text);
      sorts.push_back(sortFromSexpr(p.items[1], d_raw));
    }
    SymbolRef symbol = knownSymbol(name);
    if (!symbol) symbol = makeSymbol(name, sorts, sortFromSexpr(e.items[3], d_raw));
    FunctionTable& table = tableFor(symbol);

    const Sexpr* cursor = &body;
    while (!cursor->atom && cursor->items.size() == 4
           && cursor->items[0].isAtom("ite"))
    {
      std::vector<std::optional<Value>> point(paramNames.size());
      condition(cursor->items[1], paramNames, point);
      std::vector<Value> args;
      for (const auto& v : point)
      {
        if (!v) unsupported("condition does not fix every argument");
        args.push_back(*v);
      }
      auto out = tryValue(cursor->items[2]);
      if (!out) unsupported("non-literal branch value");
      table.points.try_emplace(std::move(args), out->value);
      cursor = &cursor->items[3];
    }
    auto fallback = tryValue(*cursor);
    if (!fallback) unsupported("function body outside the ite fragment");
    table.defaultValue = fallback->value;
    d_hasDefault[name] = true;
  }

  void condition(const Sexpr& c,
                 const std::vector<std::string>& params,
                 std::vector<std::optional<Value>>& point)
  {
    auto paramIndex = [&](const Sexpr& e) -> std::optional<std::size_t> {
      if (!e.atom) return std::nullopt;
      auto it = std::find(params.begin(), params.end(), e.text);
      if (it == params.end()) return std::nullopt;
      return static_cast<std::size_t>(it - params.begin());
    };
    auto fix = [&](std::size_t i, Value v) {
      if (point[i] && *point[i] != v) unsupported("contradictory condition");
      point[i] = v;
    };
    if (auto i = paramIndex(c))
    {
      fix(*i, 1);
      return;
    }
    if (c.atom) unsupported("condition " + c.text);
    if (c.items.size() == 2 && c.items[0].isAtom("not"))
    {
      if (auto i = paramIndex(c.items[1]))
      {
        fix(*i, 0);
        return;
      }
    }
    if (!c.items.empty() && c.items[0].isAtom("and"))
    {
      for (std::size_t k = 1; k < c.items.size(); ++k)
        condition(c.items[k], params, point);
      return;
    }
    if (c.items.size() == 3 && c.items[0].isAtom("="))
    {
      auto li = paramIndex(c.items[1]);
      auto ri = paramIndex(c.items[2]);
      if (li && !ri)
      {
        if (auto v = tryValue(c.items[2]))
        {
          fix(*li, v->value);
          return;
        }
      }
      if (ri && !li)
      {
        if (auto v = tryValue(c.items[1]))
        {
          fix(*ri, v->value);
          return;
        }
      }
    }
    unsupported("condition " + c.toString());
  }

  std::string_view d_raw;
  const Signature* d_known;
  Model d_model;
  std::map<std::string, FunctionTable> d_tables;
  std::map<std::string, bool> d_hasDefault;
};

}  // namespace

std::string
selectLogic(const std::vector<Term>& assertions)
{
  bool quantified = std::any_of(assertions.begin(), assertions.end(),
                                [](const Term& t) { return hasQuantifiers(t); });
  bool integers =
      std::any_of(assertions.begin(), assertions.end(), hasIntegers);
  std::string logic = quantified ? "" : "QF_";
  return logic + (integers ? "UFLIA" : "UF");
}

std::string
declareFunction(const FunctionSymbol& symbol)
{
  std::ostringstream os;
  os << "(declare-fun " << smtSymbol(symbol.name) << " (";
  for (std::size_t i = 0; i < symbol.argSorts.size(); ++i)
    os << (i ? " " : "") << sortName(symbol.argSorts[i]);
  os << ") " << sortName(symbol.resultSort) << ")";
  return os.str();
}

std::string
declareConstant(const Term& constant)
{
  return "(declare-fun " + smtSymbol(constant.name()) + " () "
         + sortName(constant.sort()) + ")";
}

std::string
emitSmtlib(const Signature& declarations,
           const std::vector<Term>& assertions,
           const EmitOptions& options)
{
  Signature sig = declarations;
  for (const Term& a : assertions) sig.extend(a);
  std::ostringstream os;
  if (!options.comment.empty()) os << "; " << options.comment << "\n";
  os << "(set-option :print-success false)\n";
  os << "(set-option :produce-models true)\n";
  os << "(set-logic "
     << (options.logic.empty() ? selectLogic(assertions) : options.logic)
     << ")\n";
  for (const SymbolRef& f : sig.functions) os << declareFunction(*f) << "\n";
  for (const Term& c : sig.constants) os << declareConstant(c) << "\n";
  for (const Term& a : assertions) os << "(assert " << a << ")\n";
  if (options.checkSat) os << "(check-sat)\n";
  return os.str();
}

std::string
Sexpr::toString() const
{
  if (atom)
  {
    bool plain = !text.empty()
                 && std::none_of(text.begin(), text.end(), [](char c) {
                      return std::isspace(static_cast<unsigned char>(c))
                             || c == '(' || c == ')' || c == '|';
                    });
    return plain ? text : "|" + text + "|";
  }
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i)
  {
    if (i) out += " ";
    out += items[i].toString();
  }
  return out + ")";
}

std::vector<Sexpr>
parseSexprs(std::string_view text)
{
  return Parser(text).all();
}

void
SexprReader::feed(std::string_view bytes)
{
  d_buffer.append(bytes);
}

bool
SexprReader::next(Sexpr& out)
{
  std::size_t start = 0;
  std::size_t end = scanDatum(d_buffer, 0, start);
  if (end == std::string_view::npos) return false;
  std::vector<Sexpr> parsed =
      parseSexprs(std::string_view(d_buffer).substr(start, end - start));
  d_buffer.erase(0, end);
  if (parsed.size() != 1)
    throw SolverError("could not split solver output into expressions");
  out = std::move(parsed.front());
  return true;
}

Value
parseValue(const Sexpr& e)
{
  auto v = tryValue(e);
  if (!v) throw SolverError("expected a literal value, got " + e.toString());
  return v->value;
}

Model
parseModelResponse(std::string_view text, const Signature* known)
{
  std::vector<Sexpr> top;
  try
  {
    top = parseSexprs(text);
  }
  catch (const ParseError& e)
  {
    throw SolverError(std::string("malformed model response: ") + e.what());
  }
  ModelBuilder builder(text, known);
  for (const Sexpr& e : top) builder.item(e);
  return builder.finish();
}

}  // namespace monoinfer
