#include "mucalc/unify.hpp"

#include <algorithm>

namespace mucalc {
namespace {

const Term& walk(const Term& t, const Subst& s) {
  const Term* cur = &t;
  while (cur->is_variable()) {
    auto it = s.find(*cur);
    if (it == s.end()) break;
    cur = &it->second;
  }
  return *cur;
}

bool occurs(const Term& v, const Term& t, const Subst& s) {
  const Term& w = walk(t, s);
  if (w.is_variable()) return w == v;
  for (const auto& a : w.args)
    if (occurs(v, a, s)) return true;
  return false;
}

}  // namespace

std::optional<Subst> unify(const Term& a, const Term& b, Subst s) {
  const Term wa = walk(a, s);
  const Term wb = walk(b, s);
  if (wa.is_variable() && wb.is_variable() && wa == wb) return s;
  if (wa.is_variable()) {
    if (wa.sort != wb.sort) return std::nullopt;
    if (occurs(wa, wb, s)) return std::nullopt;
    s.emplace(wa, wb);
    return s;
  }
  if (wb.is_variable()) {
    if (wb.sort != wa.sort) return std::nullopt;
    if (occurs(wb, wa, s)) return std::nullopt;
    s.emplace(wb, wa);
    return s;
  }
  if (wa.kind != wb.kind || wa.symbol != wb.symbol || wa.sort != wb.sort ||
      wa.args.size() != wb.args.size())
    return std::nullopt;
  std::optional<Subst> cur = std::move(s);
  for (std::size_t i = 0; i < wa.args.size(); ++i) {
    cur = unify(wa.args[i], wb.args[i], std::move(*cur));
    if (!cur) return std::nullopt;
  }
  return cur;
}

std::optional<Subst> unify_atoms(const Literal& a, const Literal& b, Subst s) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) return std::nullopt;
  std::optional<Subst> cur = std::move(s);
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    cur = unify(a.args[i], b.args[i], std::move(*cur));
    if (!cur) return std::nullopt;
  }
  return cur;
}

Term apply_subst(const Term& t, const Subst& s) {
  const Term& w = walk(t, s);
  if (w.is_variable() || w.args.empty()) return w;
  std::vector<Term> args;
  args.reserve(w.args.size());
  for (const auto& a : w.args) args.push_back(apply_subst(a, s));
  return Term::application(w.symbol, std::move(args), w.sort);
}

Literal apply_subst(const Literal& l, const Subst& s) {
  std::vector<Term> args;
  args.reserve(l.args.size());
  for (const auto& a : l.args) args.push_back(apply_subst(a, s));
  return Literal(l.positive, l.predicate, std::move(args));
}

Clause apply_subst(const Clause& c, const Subst& s) {
  std::vector<Literal> lits;
  lits.reserve(c.literals.size());
  for (const auto& l : c.literals) lits.push_back(apply_subst(l, s));
  return Clause(std::move(lits));
}

std::optional<Subst> match_term(const Term& pattern, const Term& target, Subst s) {
  if (pattern.is_variable()) {
    auto it = s.find(pattern);
    if (it != s.end()) return it->second == target ? std::optional<Subst>(std::move(s)) : std::nullopt;
    if (pattern.sort != target.sort) return std::nullopt;
    s.emplace(pattern, target);
    return s;
  }
  if (pattern.kind != target.kind || pattern.symbol != target.symbol ||
      pattern.sort != target.sort || pattern.args.size() != target.args.size())
    return std::nullopt;
  std::optional<Subst> cur = std::move(s);
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    cur = match_term(pattern.args[i], target.args[i], std::move(*cur));
    if (!cur) return std::nullopt;
  }
  return cur;
}

namespace {

bool subsumes_from(const Clause& c, const Clause& d, std::size_t index, const Subst& s) {
  if (index == c.literals.size()) return true;
  const Literal& lit = c.literals[index];
  for (const auto& cand : d.literals) {
    if (cand.positive != lit.positive || cand.predicate != lit.predicate ||
        cand.args.size() != lit.args.size())
      continue;
    std::optional<Subst> next = s;
    for (std::size_t i = 0; next && i < lit.args.size(); ++i)
      next = match_term(lit.args[i], cand.args[i], std::move(*next));
    if (next && subsumes_from(c, d, index + 1, *next)) return true;
  }
  return false;
}

}  // namespace

bool subsumes(const Clause& c, const Clause& d) {
  if (c.literals.size() > d.literals.size()) return false;
  // Standardize apart: matching treats target variables as rigid, so the
  // two sides must not share variable names.
  const Clause pattern = rename_variables(c, "u");
  const Clause target = rename_variables(d, "w");
  return subsumes_from(pattern, target, 0, {});
}

Clause rename_variables(const Clause& c, const std::string& prefix) {
  Subst s;
  for (const auto& v : clause_variables(c))
    s.emplace(v, Term::variable(prefix + std::to_string(s.size()), v.sort));
  return apply_subst(c, s);
}

}  // namespace mucalc
