#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mucalc/problem.hpp"

namespace mucalc {

// Located diagnostic for malformed input. what() is "<line>:<col>: <message>".
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
        line_(line),
        col_(col),
        message_(message) {}

  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int col_;
  std::string message_;
};

// Vocabulary context for elaboration. Constants and predicate/function
// signatures are committed on first use in auto-declaration mode; strict
// mode rejects undeclared constants (reserved time literals excepted).
struct SymbolTable {
  std::map<std::string, Sort> constants;
  std::map<std::string, Sort> variables;  // free-variable context, for open formulae
  std::map<std::string, std::vector<Sort>> predicates;
  std::map<std::string, std::pair<std::vector<Sort>, Sort>> functions;
  bool strict = false;
};

// Parses a single formula. The one-argument form elaborates against a
// fresh auto-declaring symbol table.
Formula::Ptr parse_formula(const std::string& text);
Formula::Ptr parse_formula(const std::string& text, SymbolTable& symbols);

struct ParseOptions {
  bool strict = false;
};

// Parses one define-problem form. Assumption labels must be unique, all
// formulae closed, and exactly one :goal present.
Problem parse_problem(const std::string& text, const ParseOptions& options = {});

// Canonical rendering; re-parses to an equal Problem and is byte-stable.
std::string render_problem(const Problem& problem);

}  // namespace mucalc
