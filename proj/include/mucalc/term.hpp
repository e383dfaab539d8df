#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mucalc {

// The four sorts of the calculus. Agent and time constants populate the
// modal operator slots; objects and fluents populate ordinary predicate
// arguments.
enum class Sort : std::uint8_t { Agent, Time, Object, Fluent };

std::string_view sort_name(Sort s);
std::optional<Sort> sort_from_name(std::string_view name);

// Sorted first-order term: variable, constant, or function application.
// Immutable by convention; all mutation happens through construction.
struct Term {
  enum class Kind : std::uint8_t { Variable, Constant, Application };

  Kind kind = Kind::Constant;
  std::string symbol;
  Sort sort = Sort::Object;
  std::vector<Term> args;  // nonempty only for applications

  static Term variable(std::string name, Sort sort);
  static Term constant(std::string name, Sort sort);
  static Term application(std::string fn, std::vector<Term> args, Sort result_sort);

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_constant() const { return kind == Kind::Constant; }
  bool is_ground() const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

  std::string render() const;
};

// Total order on terms, used for canonical clause forms and map keys.
int compare(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};

// Indexed time constants t0, t1, ... carry their index in the name.
// Returns nullopt for variables, non-time terms, and unindexed names.
std::optional<long> time_index(const Term& t);

// True for names of the shape t<digits> (the reserved time literals).
bool is_time_literal(std::string_view name);

}  // namespace mucalc
