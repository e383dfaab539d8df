#pragma once

#include <set>
#include <string>
#include <vector>

#include "mucalc/clause.hpp"
#include "mucalc/formula.hpp"

namespace mucalc {

// Deterministic fresh-name source shared across one clausification run so
// Skolem symbols stay unique over a whole problem. `taken` holds symbols
// already in use; generated names skip them.
struct FreshNames {
  std::set<std::string> taken;
  int skolem = 0;
  int variable = 0;

  std::string next_skolem();
  std::string next_variable();
};

// Transforms a closed, modal-free formula into clauses: negation normal
// form, binder standardization, inside-out Skolemization of existentials
// (reaching them as negated universals), then distribution to CNF.
// Tautologous clauses are dropped and each clause is canonicalized.
// Throws std::invalid_argument on modal operators or free variables.
std::vector<Clause> clausify(const Formula::Ptr& f, FreshNames& fresh);

}  // namespace mucalc
