#include "mucalc/clausify.hpp"

#include <set>
#include <stdexcept>

namespace mucalc {

std::string FreshNames::next_skolem() {
  std::string name;
  do {
    name = "sk" + std::to_string(++skolem);
  } while (taken.count(name));
  taken.insert(name);
  return name;
}

std::string FreshNames::next_variable() {
  std::string name;
  do {
    name = "u" + std::to_string(++variable);
  } while (taken.count(name));
  taken.insert(name);
  return name;
}

namespace {

// Negation normal form, binder standardization, and Skolemization in one
// polarity-driven pass. `universals` are the standardized universal
// variables in scope (Skolem arguments); `env` maps original bound
// variables to their replacements.
Formula::Ptr transform(const Formula::Ptr& f, bool positive, std::vector<Term>& universals,
                       Binding env, FreshNames& fresh) {
  switch (f->kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> args;
      args.reserve(f->args().size());
      for (const auto& a : f->args()) args.push_back(substitute(a, env));
      auto atom = Formula::atom(f->predicate(), std::move(args));
      return positive ? atom : Formula::negation(atom);
    }
    case Formula::Kind::Not:
      return transform(f->lhs(), !positive, universals, std::move(env), fresh);
    case Formula::Kind::And: {
      auto l = transform(f->lhs(), positive, universals, env, fresh);
      auto r = transform(f->rhs(), positive, universals, env, fresh);
      return positive ? Formula::conj(l, r) : Formula::disj(l, r);
    }
    case Formula::Kind::Or: {
      auto l = transform(f->lhs(), positive, universals, env, fresh);
      auto r = transform(f->rhs(), positive, universals, env, fresh);
      return positive ? Formula::disj(l, r) : Formula::conj(l, r);
    }
    case Formula::Kind::Implies: {
      auto l = transform(f->lhs(), !positive, universals, env, fresh);
      auto r = transform(f->rhs(), positive, universals, env, fresh);
      return positive ? Formula::disj(l, r) : Formula::conj(l, r);
    }
    case Formula::Kind::Iff: {
      auto lp = transform(f->lhs(), true, universals, env, fresh);
      auto ln = transform(f->lhs(), false, universals, env, fresh);
      auto rp = transform(f->rhs(), true, universals, env, fresh);
      auto rn = transform(f->rhs(), false, universals, env, fresh);
      return positive ? Formula::disj(Formula::conj(lp, rp), Formula::conj(ln, rn))
                      : Formula::disj(Formula::conj(lp, rn), Formula::conj(ln, rp));
    }
    case Formula::Kind::Forall: {
      const Term& v = f->bound_var();
      if (positive) {
        Term u = Term::variable(fresh.next_variable(), v.sort);
        env.insert_or_assign(v, u);
        universals.push_back(u);
        auto body = transform(f->body(), positive, universals, std::move(env), fresh);
        universals.pop_back();
        return body;
      }
      // A universal under negation is an existential: replace the binder
      // by a Skolem term over the universals in scope.
      Term sk = universals.empty()
                    ? Term::constant(fresh.next_skolem(), v.sort)
                    : Term::application(fresh.next_skolem(), universals, v.sort);
      env.insert_or_assign(v, sk);
      return transform(f->body(), positive, universals, std::move(env), fresh);
    }
    case Formula::Kind::Believes:
    case Formula::Kind::Perceives:
      throw std::invalid_argument("clausify: modal operator not eliminated: " + f->render());
  }
  throw std::logic_error("clausify: unreachable");
}

Literal literal_of(const Formula::Ptr& m, bool positive) {
  return Literal(positive, m->predicate(), m->args());
}

std::vector<Clause> distribute(const Formula::Ptr& m) {
  switch (m->kind()) {
    case Formula::Kind::Atom:
      return {Clause({literal_of(m, true)})};
    case Formula::Kind::Not:
      return {Clause({literal_of(m->lhs(), false)})};
    case Formula::Kind::And: {
      auto l = distribute(m->lhs());
      auto r = distribute(m->rhs());
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case Formula::Kind::Or: {
      auto l = distribute(m->lhs());
      auto r = distribute(m->rhs());
      std::vector<Clause> out;
      out.reserve(l.size() * r.size());
      for (const auto& ci : l)
        for (const auto& cj : r) {
          Clause merged = ci;
          merged.literals.insert(merged.literals.end(), cj.literals.begin(), cj.literals.end());
          out.push_back(std::move(merged));
        }
      return out;
    }
    default:
      throw std::logic_error("distribute: unexpected node");
  }
}

}  // namespace

std::vector<Clause> clausify(const Formula::Ptr& f, FreshNames& fresh) {
  if (!f) throw std::invalid_argument("clausify: null formula");
  if (!free_variables(f).empty())
    throw std::invalid_argument("clausify: formula has free variables: " + f->render());
  std::vector<Term> universals;
  auto matrix = transform(f, true, universals, {}, fresh);
  std::vector<Clause> out;
  std::set<std::string> seen;
  for (auto& c : distribute(matrix)) {
    if (tautology(c)) continue;
    Clause normal = canonical(c);
    if (seen.insert(normal.render()).second) out.push_back(std::move(normal));
  }
  return out;
}

}  // namespace mucalc
