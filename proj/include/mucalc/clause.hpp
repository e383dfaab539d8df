#pragma once

#include <string>
#include <vector>

#include "mucalc/term.hpp"

namespace mucalc {

// Signed atom. Arguments are first-order terms; the predicate symbol
// carries no sort of its own.
struct Literal {
  bool positive = true;
  std::string predicate;
  std::vector<Term> args;

  Literal() = default;
  Literal(bool pos, std::string pred, std::vector<Term> as)
      : positive(pos), predicate(std::move(pred)), args(std::move(as)) {}

  Literal negated() const { return Literal(!positive, predicate, args); }
  bool same_atom(const Literal& o) const { return predicate == o.predicate && args == o.args; }
  bool operator==(const Literal& o) const { return positive == o.positive && same_atom(o); }

  std::string render() const;
};

// Disjunction of literals; the empty clause is the contradiction.
struct Clause {
  std::vector<Literal> literals;

  Clause() = default;
  explicit Clause(std::vector<Literal> lits) : literals(std::move(lits)) {}

  bool empty() const { return literals.empty(); }
  bool operator==(const Clause& o) const { return literals == o.literals; }

  std::string render() const;
};

// True when the clause contains a literal and its negation.
bool tautology(const Clause& c);

// Deterministic normal form: duplicate literals removed, literals ordered
// by a variable-blind key, variables renamed v0, v1, ... in order of first
// occurrence. Equal canonical renders identify duplicate clauses, and the
// checker recomputes the same form the prover stored.
Clause canonical(const Clause& c);

// Every variable of the clause in first-occurrence order.
std::vector<Term> clause_variables(const Clause& c);

}  // namespace mucalc
