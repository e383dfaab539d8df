#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mucalc/term.hpp"

namespace mucalc {

// Formula of the calculus: first-order connectives and the universal
// quantifier, plus the two time-indexed modal operators. Existential
// quantification is the defined form (not (forall x (not phi))); the
// parser and renderer treat `exists` as sugar for it.
//
// Nodes are immutable and shared; Formula::Ptr values may be freely
// copied across threads.
class Formula {
 public:
  enum class Kind : std::uint8_t {
    Atom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Forall,
    Believes,
    Perceives,
  };

  using Ptr = std::shared_ptr<const Formula>;

  static Ptr atom(std::string predicate, std::vector<Term> args = {});
  static Ptr negation(Ptr f);
  static Ptr conj(Ptr a, Ptr b);
  static Ptr disj(Ptr a, Ptr b);
  static Ptr implies(Ptr a, Ptr b);
  static Ptr iff(Ptr a, Ptr b);
  static Ptr forall(Term var, Ptr body);
  // Defined existential: (not (forall var (not body))).
  static Ptr exists(Term var, Ptr body);
  static Ptr believes(Term agent, Term time, Ptr body);
  static Ptr perceives(Term agent, Term time, Ptr body);

  Kind kind() const { return kind_; }
  bool is_modal() const { return kind_ == Kind::Believes || kind_ == Kind::Perceives; }
  bool is_binary() const {
    return kind_ == Kind::And || kind_ == Kind::Or || kind_ == Kind::Implies ||
           kind_ == Kind::Iff;
  }

  // Atom accessors.
  const std::string& predicate() const { return predicate_; }
  const std::vector<Term>& args() const { return args_; }

  // Connective accessors: Not uses lhs only.
  const Ptr& lhs() const { return lhs_; }
  const Ptr& rhs() const { return rhs_; }

  // Forall accessors.
  const Term& bound_var() const { return var_; }
  const Ptr& body() const { return body_; }

  // Modal accessors.
  const Term& agent() const { return agent_; }
  const Term& time() const { return time_; }

  bool contains_modal() const;

  // Structural (syntactic) equality, sorts included.
  friend bool equal(const Formula::Ptr& a, const Formula::Ptr& b);

  // Deterministic S-expression rendering; the parser reads it back to a
  // structurally equal formula.
  std::string render() const;

 private:
  Formula() = default;

  static Ptr binary_node(Kind k, Ptr a, Ptr b);
  static Ptr modal_node(Kind k, Term agent, Term time, Ptr body);

  Kind kind_ = Kind::Atom;
  std::string predicate_;
  std::vector<Term> args_;
  Ptr lhs_, rhs_;
  Term var_;
  Ptr body_;
  Term agent_, time_;
};

bool equal(const Formula::Ptr& a, const Formula::Ptr& b);

// Binding from variables to replacement terms.
using Binding = std::map<Term, Term, TermLess>;

// Capture-avoiding simultaneous substitution. Descends into modal bodies
// and into the agent/time slots. A binding whose replacement sort differs
// from the variable sort raises std::invalid_argument.
Formula::Ptr substitute(const Formula::Ptr& f, const Binding& binding);
Term substitute(const Term& t, const Binding& binding);

// Variables with a free occurrence, including modal slots.
std::set<Term, TermLess> free_variables(const Formula::Ptr& f);
void collect_free_variables(const Formula::Ptr& f, std::set<Term, TermLess>& out);

// Identity up to consistent renaming of bound variables.
bool alpha_equivalent(const Formula::Ptr& a, const Formula::Ptr& b);

// Every constant or function symbol occurring in the formula, with sort
// (constants) — used for vocabulary collection.
void collect_constants(const Formula::Ptr& f, std::map<std::string, Sort>& out);
void collect_constants(const Term& t, std::map<std::string, Sort>& out);

// All symbols (variables, constants, functions, predicates) by name.
void collect_symbols(const Formula::Ptr& f, std::set<std::string>& out);

}  // namespace mucalc
