#pragma once

// Parser corpus: one case per line, "expected | expression", where expected
// is "ok" or ErrorKind@line:column and "\n" stands for a newline.

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "qresum/expression.hpp"

namespace qresum::test {

struct CorpusCase {
  int source_line = 0;
  std::string expected;
  std::string text;
};

inline std::vector<CorpusCase> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<CorpusCase> out;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (line.empty() || line[0] == '#') continue;
    const std::size_t bar = line.find('|');
    if (bar == std::string::npos) throw std::runtime_error("corpus line " + std::to_string(n));
    CorpusCase c;
    c.source_line = n;
    c.expected = line.substr(0, bar);
    while (!c.expected.empty() && c.expected.back() == ' ') c.expected.pop_back();
    std::string text = line.substr(bar + 1);
    if (!text.empty() && text[0] == ' ') text.erase(0, 1);
    for (std::size_t p; (p = text.find("\\n")) != std::string::npos;) text.replace(p, 2, "\n");
    c.text = text;
    out.push_back(std::move(c));
  }
  return out;
}

/// Empty when the case behaves as expected; valid cases must also survive
/// pretty_print -> parse unchanged.
inline std::optional<std::string> check_case(const CorpusCase& c) {
  try {
    const Call ast = parse(c.text);
    if (c.expected != "ok") return "parsed, expected " + c.expected;
    const std::string printed = pretty_print(ast);
    if (!(parse(printed) == ast)) return "round trip changed the AST: " + printed;
    if (pretty_print(parse(printed)) != printed) return "pretty_print is not stable: " + printed;
    return std::nullopt;
  } catch (const ParseError& e) {
    const std::string got = std::string(to_string(e.kind())) + "@" + std::to_string(e.pos().line) +
                            ":" + std::to_string(e.pos().column);
    if (got != c.expected) return "got " + got + " (" + e.what() + "), expected " + c.expected;
    return std::nullopt;
  }
}

}  // namespace qresum::test
