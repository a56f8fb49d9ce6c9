#include "qresum/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>

namespace qresum {

namespace {

std::string describe_expected(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out;
}

std::string position_prefix(SourcePos pos) {
  return "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": ";
}

}  // namespace

ParseError::ParseError(ErrorKind kind, SourcePos pos, std::vector<std::string> expected,
                       std::string found, const std::string& detail)
    : Error(kind, position_prefix(pos) + detail), pos_(pos), expected_(std::move(expected)),
      found_(std::move(found)) {}

const Value* Call::find(const std::string& key) const {
  for (const Argument& a : args)
    if (a.name == key) return &a.value;
  return nullptr;
}

bool operator==(const Value& a, const Value& b) {
  if (a.is_number() != b.is_number()) return false;
  if (a.is_number()) return a.number() == b.number();
  return a.call() == b.call();
}

bool operator==(const Call& a, const Call& b) {
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (a.args[i].name != b.args[i].name || !(a.args[i].value == b.args[i].value)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

namespace {

enum class Tok { Ident, Number, LParen, RParen, Comma, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  Complex number{};
  SourcePos pos;
};

std::string token_name(const Token& t) {
  switch (t.kind) {
    case Tok::Ident: return "identifier '" + t.text + "'";
    case Tok::Number: return "number '" + t.text + "'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Equals: return "'='";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    skip_space();
    Token t;
    t.pos = pos_;
    if (i_ >= s_.size()) {
      t.kind = Tok::End;
      return t;
    }
    const char c = s_[i_];
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case ',': return single(Tok::Comma);
      case '=': return single(Tok::Equals);
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '+' || c == '-') {
      return number();
    }
    throw ParseError(ErrorKind::SyntaxError, pos_, {"identifier", "number", "'('", "')'", "','", "'='"},
                     std::string(1, c), std::string("unexpected character '") + c + "'");
  }

 private:
  void advance() {
    if (s_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void skip_space() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) advance();
  }

  bool at_digit() const {
    return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
  }

  Token single(Tok k) {
    Token t;
    t.kind = k;
    t.pos = pos_;
    t.text = std::string(1, s_[i_]);
    advance();
    return t;
  }

  Token ident() {
    Token t;
    t.kind = Tok::Ident;
    t.pos = pos_;
    while (i_ < s_.size()) {
      const char c = s_[i_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
        t.text += c;
        advance();
      } else {
        break;
      }
    }
    return t;
  }

  // [sign] digits [. digits] [e [sign] digits]; returns the consumed text.
  std::string mantissa(bool allow_sign) {
    const SourcePos start = pos_;
    std::string out;
    if (allow_sign && i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
      out += s_[i_];
      advance();
    }
    bool digits = false;
    while (at_digit()) {
      out += s_[i_];
      advance();
      digits = true;
    }
    if (i_ < s_.size() && s_[i_] == '.') {
      out += '.';
      advance();
      while (at_digit()) {
        out += s_[i_];
        advance();
        digits = true;
      }
    }
    if (!digits) {
      throw ParseError(ErrorKind::SyntaxError, start, {"digit"}, here(),
                       "malformed number: expected a digit");
    }
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      out += s_[i_];
      advance();
      if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
        out += s_[i_];
        advance();
      }
      if (!at_digit()) {
        throw ParseError(ErrorKind::SyntaxError, pos_, {"exponent digit"}, here(),
                         "malformed number: expected exponent digits");
      }
      while (at_digit()) {
        out += s_[i_];
        advance();
      }
    }
    return out;
  }

  std::string here() const {
    return i_ < s_.size() ? std::string(1, s_[i_]) : std::string("end of input");
  }

  static Real to_real(const std::string& text) { return std::strtold(text.c_str(), nullptr); }

  Token number() {
    Token t;
    t.kind = Tok::Number;
    t.pos = pos_;
    const std::string re = mantissa(true);
    t.text = re;
    if (i_ < s_.size() && s_[i_] == 'i') {
      advance();
      t.text += 'i';
      t.number = Complex(0.0L, to_real(re));
    } else if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
      const std::string im = mantissa(true);
      if (i_ >= s_.size() || s_[i_] != 'i') {
        throw ParseError(ErrorKind::SyntaxError, pos_, {"'i'"}, here(),
                         "complex literal: expected 'i' after the imaginary part");
      }
      advance();
      t.text += im + "i";
      t.number = Complex(to_real(re), to_real(im));
    } else {
      t.number = Complex(to_real(re), 0.0L);
    }
    if (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) {
      throw ParseError(ErrorKind::SyntaxError, pos_, {"','", "')'"}, here(),
                       "unexpected '" + here() + "' after number '" + t.text + "'");
    }
    return t;
  }

  const std::string& s_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { tok_ = lex_.next(); }

  Call parse_top() {
    Call c = parse_call();
    if (tok_.kind != Tok::End) fail({"end of input"});
    return c;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) {
    throw ParseError(ErrorKind::SyntaxError, tok_.pos, expected, token_name(tok_),
                     "expected " + describe_expected(expected) + " but found " + token_name(tok_));
  }

  Token expect(Tok kind, const char* label) {
    if (tok_.kind != kind) fail({label});
    Token t = tok_;
    tok_ = lex_.next();
    return t;
  }

  Call parse_call() {
    Call c;
    c.pos = tok_.pos;
    c.name = expect(Tok::Ident, "function name").text;
    expect(Tok::LParen, "'('");
    c.args.push_back(parse_kv());
    while (tok_.kind == Tok::Comma) {
      tok_ = lex_.next();
      c.args.push_back(parse_kv());
    }
    if (tok_.kind != Tok::RParen) fail({"','", "')'"});
    tok_ = lex_.next();
    return c;
  }

  Argument parse_kv() {
    Argument a;
    a.pos = tok_.pos;
    a.name = expect(Tok::Ident, "parameter name").text;
    expect(Tok::Equals, "'='");
    a.value = parse_value();
    return a;
  }

  Value parse_value() {
    Value v;
    v.pos = tok_.pos;
    if (tok_.kind == Tok::Number) {
      v.data = tok_.number;
      tok_ = lex_.next();
      return v;
    }
    if (tok_.kind == Tok::Ident) {
      v.data = std::make_shared<Call>(parse_call());
      return v;
    }
    fail({"number", "function call"});
  }

  Lexer lex_;
  Token tok_;
};

// ---------------------------------------------------------------------------
// Function table
// ---------------------------------------------------------------------------

struct Signature {
  std::vector<std::string> required;
  std::vector<std::string> optional;
  /// Parameters whose value is a call rather than a number.
  std::vector<std::string> call_params;
  /// Accepted sets of present optional parameters; empty means any subset.
  std::vector<std::set<std::string>> optional_groups;
};

using Table = std::map<std::string, Signature>;

const Table& top_table() {
  static const Table t = {
      {"theta", {{"q", "z"}, {}, {}, {}}},
      {"qpoch", {{"q", "a"}, {"n"}, {}, {}}},
      {"psi", {{"q", "a", "b", "z"}, {}, {}, {}}},
      {"phi", {{"q", "a", "z"}, {"b", "c"}, {}, {{}, {"b", "c"}}}},
      {"resumA", {{"q", "b", "x"}, {"lambda", "window"}, {}, {}}},
      {"resumB", {{"q", "a", "x"}, {"lambda", "window"}, {}, {}}},
      {"connA", {{"q", "b", "x"}, {"lambda"}, {}, {}}},
      {"connB", {{"q", "a", "x"}, {"lambda"}, {}, {}}},
      {"gammaq", {{"q", "z"}, {}, {}, {}}},
      {"eq", {{"q", "x"}, {"a", "b", "c"}, {}, {{"a", "b", "c"}, {"a"}, {"b"}}}},
      {"limit-scan", {{"of"}, {"kmin", "kmax", "lambda"}, {"of"}, {}}},
  };
  return t;
}

// Targets of limit-scan(of=...): the q -> 1 versions, parametrized by exponents.
const Table& scan_table() {
  static const Table t = {
      {"theta", {{"alpha", "beta", "z"}, {"scaled"}, {}, {}}},
      {"qpoch", {{"alpha", "z"}, {}, {}, {}}},
      {"phi", {{"x"}, {"alpha"}, {}, {}}},
      {"resumA", {{"beta", "x"}, {}, {}, {}}},
      {"resumB", {{"alpha", "x"}, {}, {}, {}}},
  };
  return t;
}

std::vector<std::string> keys(const Table& t) {
  std::vector<std::string> out;
  for (const auto& [k, v] : t) out.push_back(k);
  return out;
}

void validate_against(const Call& call, const Table& table, const char* where) {
  const auto it = table.find(call.name);
  if (it == table.end()) {
    throw ParseError(ErrorKind::UnknownFunction, call.pos, keys(table), call.name,
                     "unknown function '" + call.name + "'" + where);
  }
  const Signature& sig = it->second;
  std::set<std::string> seen;
  std::set<std::string> optional_present;
  for (const Argument& a : call.args) {
    const bool req = std::count(sig.required.begin(), sig.required.end(), a.name) > 0;
    const bool opt = std::count(sig.optional.begin(), sig.optional.end(), a.name) > 0;
    if (!req && !opt) {
      std::vector<std::string> allowed = sig.required;
      allowed.insert(allowed.end(), sig.optional.begin(), sig.optional.end());
      throw ParseError(ErrorKind::UnknownParameter, a.pos, allowed, a.name,
                       "unknown parameter '" + a.name + "' for " + call.name + "(); expected " +
                           describe_expected(allowed));
    }
    if (!seen.insert(a.name).second) {
      throw ParseError(ErrorKind::ArityError, a.pos, {}, a.name,
                       "parameter '" + a.name + "' given twice in " + call.name + "()");
    }
    if (opt) optional_present.insert(a.name);
    const bool wants_call =
        std::count(sig.call_params.begin(), sig.call_params.end(), a.name) > 0;
    if (wants_call && a.value.is_number()) {
      throw ParseError(ErrorKind::ArityError, a.value.pos, {"function call"}, "number",
                       "parameter '" + a.name + "' of " + call.name + "() expects a call");
    }
    if (!wants_call && !a.value.is_number()) {
      throw ParseError(ErrorKind::ArityError, a.value.pos, {"number"}, a.value.call().name,
                       "parameter '" + a.name + "' of " + call.name + "() expects a number");
    }
  }
  for (const std::string& r : sig.required) {
    if (!seen.count(r)) {
      throw ParseError(ErrorKind::ArityError, call.pos, {r}, call.name,
                       call.name + "() is missing required parameter '" + r + "'");
    }
  }
  if (!sig.optional_groups.empty() &&
      std::find(sig.optional_groups.begin(), sig.optional_groups.end(), optional_present) ==
          sig.optional_groups.end()) {
    std::string groups;
    for (const auto& g : sig.optional_groups) {
      std::string s;
      for (const auto& k : g) s += (s.empty() ? "" : ",") + k;
      groups += (groups.empty() ? "{" : " | {") + s + "}";
    }
    throw ParseError(ErrorKind::ArityError, call.pos, {}, call.name,
                     call.name + "() accepts the optional parameter sets " + groups);
  }
}

// Shortest decimal form that reads back to the same long double.
std::string format_exact(Real v) {
  char buf[64];
  for (int digits = 1; digits <= 21; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*Lg", digits, v);
    if (std::strtold(buf, nullptr) == v) break;
  }
  return buf;
}

std::string format_number(Complex z) {
  const Real re = z.real();
  const Real im = z.imag();
  if (im == 0.0L) return format_exact(re);
  if (re == 0.0L) return format_exact(im) + "i";
  const std::string ims = format_exact(im);
  return format_exact(re) + (ims[0] == '-' ? "" : "+") + ims + "i";
}

void print(const Call& c, std::string& out) {
  out += c.name;
  out += '(';
  for (std::size_t i = 0; i < c.args.size(); ++i) {
    if (i > 0) out += ", ";
    out += c.args[i].name;
    out += '=';
    const Value& v = c.args[i].value;
    if (v.is_number()) {
      out += format_number(v.number());
    } else {
      print(v.call(), out);
    }
  }
  out += ')';
}

}  // namespace

Call parse_expression(const std::string& text) { return Parser(text).parse_top(); }

Complex parse_complex_literal(const std::string& text) {
  Lexer lex(text);
  const Token t = lex.next();
  if (t.kind != Tok::Number) {
    throw ParseError(ErrorKind::SyntaxError, t.pos, {"number"}, token_name(t),
                     "expected a number but found " + token_name(t));
  }
  const Token end = lex.next();
  if (end.kind != Tok::End) {
    throw ParseError(ErrorKind::SyntaxError, end.pos, {"end of input"}, token_name(end),
                     "unexpected " + token_name(end) + " after the number");
  }
  return t.number;
}

void validate_expression(const Call& call) {
  validate_against(call, top_table(), "");
  if (call.name == "limit-scan") {
    validate_against(call.find("of")->call(), scan_table(), " inside limit-scan(of=...)");
  }
}

Call parse(const std::string& text) {
  Call c = parse_expression(text);
  validate_expression(c);
  return c;
}

std::string pretty_print(const Call& call) {
  std::string out;
  print(call, out);
  return out;
}

const std::vector<std::string>& function_names() {
  static const std::vector<std::string> names = keys(top_table());
  return names;
}

}  // namespace qresum
