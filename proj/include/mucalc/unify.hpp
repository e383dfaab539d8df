#pragma once

#include <optional>

#include "mucalc/clause.hpp"
#include "mucalc/formula.hpp"

namespace mucalc {

// Substitutions are triangular: a bound variable may map to a term that
// itself contains bound variables; `apply` resolves chains fully.
using Subst = Binding;

// Sorted most-general unifier: a variable binds only to a term of its own
// sort, with occurs check. Extends `s`; nullopt on clash.
std::optional<Subst> unify(const Term& a, const Term& b, Subst s = {});
std::optional<Subst> unify_atoms(const Literal& a, const Literal& b, Subst s = {});

Term apply_subst(const Term& t, const Subst& s);
Literal apply_subst(const Literal& l, const Subst& s);
Clause apply_subst(const Clause& c, const Subst& s);

// One-way matching: variables of `pattern` bind, `target` stays rigid.
std::optional<Subst> match_term(const Term& pattern, const Term& target, Subst s = {});

// Subsumption: some instance of `c` is a subset of `d`.
bool subsumes(const Clause& c, const Clause& d);

// Renames every variable to prefix0, prefix1, ... preserving sorts; used
// to standardize clauses apart before an inference.
Clause rename_variables(const Clause& c, const std::string& prefix);

}  // namespace mucalc
