#pragma once

// Expression mini-language for the command line:
//
//   call  := IDENT '(' kv (',' kv)* ')'
//   kv    := IDENT '=' value
//   value := complex | real | call
//
// Complex literals have no inner whitespace: 1.5, -2e-3, 1.2+0.3i, 0.4-1i, 2i.
// Identifiers may contain '-' after the first character (limit-scan).

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qresum/types.hpp"

namespace qresum {

struct SourcePos {
  int line = 1;
  int column = 1;
};

struct Call;

struct Value {
  std::variant<Complex, std::shared_ptr<Call>> data;
  SourcePos pos;

  bool is_number() const { return std::holds_alternative<Complex>(data); }
  Complex number() const { return std::get<Complex>(data); }
  const Call& call() const { return *std::get<std::shared_ptr<Call>>(data); }
};

struct Argument {
  std::string name;
  Value value;
  SourcePos pos;
};

struct Call {
  std::string name;
  std::vector<Argument> args;
  SourcePos pos;

  /// Null when absent.
  const Value* find(const std::string& key) const;
};

/// Structural equality; positions are ignored.
bool operator==(const Value& a, const Value& b);
bool operator==(const Call& a, const Call& b);

/// A parse or validation failure with position information.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, SourcePos pos, std::vector<std::string> expected, std::string found,
             const std::string& detail);

  SourcePos pos() const { return pos_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  SourcePos pos_;
  std::vector<std::string> expected_;
  std::string found_;
};

/// Syntax only. Throws ParseError(SyntaxError).
Call parse_expression(const std::string& text);

/// Checks names, parameter sets and nesting against the function table.
/// Throws ParseError with UnknownFunction, UnknownParameter or ArityError.
void validate_expression(const Call& call);

/// parse_expression followed by validate_expression.
Call parse(const std::string& text);

/// A single complex literal, as accepted for a parameter value.
/// Throws ParseError(SyntaxError).
Complex parse_complex_literal(const std::string& text);

/// Canonical text; reparses to an equal AST. Numbers keep every digit.
std::string pretty_print(const Call& call);

/// Names of the callable functions.
const std::vector<std::string>& function_names();

}  // namespace qresum
