#include "mucalc/term.hpp"

#include <stdexcept>

namespace mucalc {

std::string_view sort_name(Sort s) {
  switch (s) {
    case Sort::Agent: return "agent";
    case Sort::Time: return "time";
    case Sort::Object: return "object";
    case Sort::Fluent: return "fluent";
  }
  return "?";
}

std::optional<Sort> sort_from_name(std::string_view name) {
  if (name == "agent") return Sort::Agent;
  if (name == "time") return Sort::Time;
  if (name == "object") return Sort::Object;
  if (name == "fluent") return Sort::Fluent;
  return std::nullopt;
}

Term Term::variable(std::string name, Sort sort) {
  Term t;
  t.kind = Kind::Variable;
  t.symbol = std::move(name);
  t.sort = sort;
  return t;
}

Term Term::constant(std::string name, Sort sort) {
  Term t;
  t.kind = Kind::Constant;
  t.symbol = std::move(name);
  t.sort = sort;
  return t;
}

Term Term::application(std::string fn, std::vector<Term> args, Sort result_sort) {
  if (args.empty()) throw std::invalid_argument("application needs at least one argument");
  Term t;
  t.kind = Kind::Application;
  t.symbol = std::move(fn);
  t.sort = result_sort;
  t.args = std::move(args);
  return t;
}

bool Term::is_ground() const {
  if (kind == Kind::Variable) return false;
  for (const Term& a : args)
    if (!a.is_ground()) return false;
  return true;
}

bool Term::operator==(const Term& other) const {
  return kind == other.kind && sort == other.sort && symbol == other.symbol &&
         args == other.args;
}

std::string Term::render() const {
  if (args.empty()) return symbol;
  std::string out = "(" + symbol;
  for (const Term& a : args) {
    out += ' ';
    out += a.render();
  }
  out += ')';
  return out;
}

int compare(const Term& a, const Term& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (int c = a.symbol.compare(b.symbol); c != 0) return c < 0 ? -1 : 1;
  if (a.sort != b.sort) return a.sort < b.sort ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (int c = compare(a.args[i], b.args[i]); c != 0) return c;
  return 0;
}

bool is_time_literal(std::string_view name) {
  if (name.size() < 2 || name[0] != 't') return false;
  for (size_t i = 1; i < name.size(); ++i)
    if (name[i] < '0' || name[i] > '9') return false;
  return true;
}

std::optional<long> time_index(const Term& t) {
  if (t.kind != Term::Kind::Constant || t.sort != Sort::Time) return std::nullopt;
  if (!is_time_literal(t.symbol)) return std::nullopt;
  return std::stol(t.symbol.substr(1));
}

}  // namespace mucalc
