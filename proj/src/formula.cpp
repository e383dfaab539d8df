#include "mucalc/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace mucalc {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Formula::Ptr Formula::atom(std::string predicate, std::vector<Term> args) {
  require(!predicate.empty(), "atom needs a predicate symbol");
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = Kind::Atom;
  f->predicate_ = std::move(predicate);
  f->args_ = std::move(args);
  return f;
}

Formula::Ptr Formula::negation(Ptr a) {
  require(a != nullptr, "negation of null formula");
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = Kind::Not;
  f->lhs_ = std::move(a);
  return f;
}

Formula::Ptr Formula::conj(Ptr a, Ptr b) { return binary_node(Kind::And, std::move(a), std::move(b)); }
Formula::Ptr Formula::disj(Ptr a, Ptr b) { return binary_node(Kind::Or, std::move(a), std::move(b)); }
Formula::Ptr Formula::implies(Ptr a, Ptr b) { return binary_node(Kind::Implies, std::move(a), std::move(b)); }
Formula::Ptr Formula::iff(Ptr a, Ptr b) { return binary_node(Kind::Iff, std::move(a), std::move(b)); }

Formula::Ptr Formula::binary_node(Kind k, Ptr a, Ptr b) {
  require(a != nullptr && b != nullptr, "binary connective of null formula");
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = k;
  f->lhs_ = std::move(a);
  f->rhs_ = std::move(b);
  return f;
}

Formula::Ptr Formula::modal_node(Kind k, Term agent, Term time, Ptr body) {
  require(agent.sort == Sort::Agent, "modal agent slot must have agent sort");
  require(time.sort == Sort::Time, "modal time slot must have time sort");
  require(body != nullptr, "modal body must be present");
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = k;
  f->agent_ = std::move(agent);
  f->time_ = std::move(time);
  f->body_ = std::move(body);
  return f;
}

Formula::Ptr Formula::forall(Term var, Ptr body) {
  require(var.is_variable(), "forall binder must be a variable");
  require(body != nullptr, "forall of null body");
  auto f = std::shared_ptr<Formula>(new Formula());
  f->kind_ = Kind::Forall;
  f->var_ = std::move(var);
  f->body_ = std::move(body);
  return f;
}

Formula::Ptr Formula::exists(Term var, Ptr body) {
  return negation(forall(std::move(var), negation(std::move(body))));
}

Formula::Ptr Formula::believes(Term agent, Term time, Ptr body) {
  return modal_node(Kind::Believes, std::move(agent), std::move(time), std::move(body));
}

Formula::Ptr Formula::perceives(Term agent, Term time, Ptr body) {
  return modal_node(Kind::Perceives, std::move(agent), std::move(time), std::move(body));
}

bool Formula::contains_modal() const {
  switch (kind_) {
    case Kind::Atom: return false;
    case Kind::Not: return lhs_->contains_modal();
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff: return lhs_->contains_modal() || rhs_->contains_modal();
    case Kind::Forall: return body_->contains_modal();
    case Kind::Believes:
    case Kind::Perceives: return true;
  }
  return false;
}

bool equal(const Formula::Ptr& a, const Formula::Ptr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Formula::Kind::Atom:
      return a->predicate() == b->predicate() && a->args() == b->args();
    case Formula::Kind::Not:
      return equal(a->lhs(), b->lhs());
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      return equal(a->lhs(), b->lhs()) && equal(a->rhs(), b->rhs());
    case Formula::Kind::Forall:
      return a->bound_var() == b->bound_var() && equal(a->body(), b->body());
    case Formula::Kind::Believes:
    case Formula::Kind::Perceives:
      return a->agent() == b->agent() && a->time() == b->time() &&
             equal(a->body(), b->body());
  }
  return false;
}

// ---------------------------------------------------------------------------
// Free variables

static void free_vars_term(const Term& t, const std::set<Term, TermLess>& bound,
                           std::set<Term, TermLess>& out) {
  if (t.is_variable()) {
    if (!bound.count(t)) out.insert(t);
    return;
  }
  for (const Term& a : t.args) free_vars_term(a, bound, out);
}

static void free_vars(const Formula::Ptr& f, std::set<Term, TermLess>& bound,
                      std::set<Term, TermLess>& out) {
  switch (f->kind()) {
    case Formula::Kind::Atom:
      for (const Term& a : f->args()) free_vars_term(a, bound, out);
      return;
    case Formula::Kind::Not:
      free_vars(f->lhs(), bound, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      free_vars(f->lhs(), bound, out);
      free_vars(f->rhs(), bound, out);
      return;
    case Formula::Kind::Forall: {
      bool fresh = bound.insert(f->bound_var()).second;
      free_vars(f->body(), bound, out);
      if (fresh) bound.erase(f->bound_var());
      return;
    }
    case Formula::Kind::Believes:
    case Formula::Kind::Perceives:
      free_vars_term(f->agent(), bound, out);
      free_vars_term(f->time(), bound, out);
      free_vars(f->body(), bound, out);
      return;
  }
}

void collect_free_variables(const Formula::Ptr& f, std::set<Term, TermLess>& out) {
  std::set<Term, TermLess> bound;
  free_vars(f, bound, out);
}

std::set<Term, TermLess> free_variables(const Formula::Ptr& f) {
  std::set<Term, TermLess> out;
  collect_free_variables(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

Term substitute(const Term& t, const Binding& binding) {
  if (t.is_variable()) {
    auto it = binding.find(t);
    if (it == binding.end()) return t;
    if (it->second.sort != t.sort)
      throw std::invalid_argument("substitution replaces " + t.symbol +
                                  " with a term of different sort");
    return it->second;
  }
  if (t.args.empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const Term& a : t.args) args.push_back(substitute(a, binding));
  return Term::application(t.symbol, std::move(args), t.sort);
}

namespace {

// Picks a name of the shape base, base_1, base_2, ... not present in avoid.
Term rename_away(const Term& var, const std::set<std::string>& avoid) {
  if (!avoid.count(var.symbol)) return var;
  for (int i = 1;; ++i) {
    std::string cand = var.symbol + "_" + std::to_string(i);
    if (!avoid.count(cand)) return Term::variable(cand, var.sort);
  }
}

void collect_term_symbols(const Term& t, std::set<std::string>& out) {
  out.insert(t.symbol);
  for (const Term& a : t.args) collect_term_symbols(a, out);
}

void collect_term_variables(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) out.insert(t.symbol);
  for (const Term& a : t.args) collect_term_variables(a, out);
}

Formula::Ptr subst_rec(const Formula::Ptr& f, const Binding& binding,
                       const std::set<std::string>& range_symbols) {
  switch (f->kind()) {
    case Formula::Kind::Atom: {
      std::vector<Term> args;
      args.reserve(f->args().size());
      for (const Term& a : f->args()) args.push_back(substitute(a, binding));
      return Formula::atom(f->predicate(), std::move(args));
    }
    case Formula::Kind::Not:
      return Formula::negation(subst_rec(f->lhs(), binding, range_symbols));
    case Formula::Kind::And:
      return Formula::conj(subst_rec(f->lhs(), binding, range_symbols),
                           subst_rec(f->rhs(), binding, range_symbols));
    case Formula::Kind::Or:
      return Formula::disj(subst_rec(f->lhs(), binding, range_symbols),
                           subst_rec(f->rhs(), binding, range_symbols));
    case Formula::Kind::Implies:
      return Formula::implies(subst_rec(f->lhs(), binding, range_symbols),
                              subst_rec(f->rhs(), binding, range_symbols));
    case Formula::Kind::Iff:
      return Formula::iff(subst_rec(f->lhs(), binding, range_symbols),
                          subst_rec(f->rhs(), binding, range_symbols));
    case Formula::Kind::Forall: {
      Binding inner = binding;
      inner.erase(f->bound_var());
      if (inner.empty()) return f;
      Term var = f->bound_var();
      Formula::Ptr body = f->body();
      if (range_symbols.count(var.symbol)) {
        // Binder would capture a variable introduced by the binding; rename it.
        std::set<std::string> avoid = range_symbols;
        collect_symbols(body, avoid);
        for (const auto& [domain_var, ignored] : binding) avoid.insert(domain_var.symbol);
        Term fresh = rename_away(var, avoid);
        Binding rename;
        rename.emplace(var, fresh);
        body = subst_rec(body, rename, {fresh.symbol});
        var = fresh;
      }
      return Formula::forall(var, subst_rec(body, inner, range_symbols));
    }
    case Formula::Kind::Believes:
    case Formula::Kind::Perceives: {
      Term agent = substitute(f->agent(), binding);
      Term time = substitute(f->time(), binding);
      Formula::Ptr body = subst_rec(f->body(), binding, range_symbols);
      return f->kind() == Formula::Kind::Believes
                 ? Formula::believes(std::move(agent), std::move(time), std::move(body))
                 : Formula::perceives(std::move(agent), std::move(time), std::move(body));
    }
  }
  return f;
}

}  // namespace

Formula::Ptr substitute(const Formula::Ptr& f, const Binding& binding) {
  if (binding.empty()) return f;
  std::set<std::string> range_vars;
  for (const auto& [var, replacement] : binding) {
    if (!var.is_variable())
      throw std::invalid_argument("substitution domain must consist of variables");
    if (replacement.sort != var.sort)
      throw std::invalid_argument("substitution replaces " + var.symbol +
                                  " with a term of different sort");
    collect_term_variables(replacement, range_vars);
  }
  return subst_rec(f, binding, range_vars);
}

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace {

// Bound variables are identified by name and sort, matching Term equality.
using VarMap = std::map<std::string, int>;

std::string var_key(const Term& v) {
  return v.symbol + "\x1f" + std::string(sort_name(v.sort));
}

bool alpha_term(const Term& a, const Term& b, const VarMap& la, const VarMap& lb) {
  if (a.kind != b.kind || a.sort != b.sort) return false;
  if (a.is_variable()) {
    auto ia = la.find(var_key(a));
    auto ib = lb.find(var_key(b));
    if (ia != la.end() || ib != lb.end()) {
      // At least one side bound: both must be, at the same binder level.
      return ia != la.end() && ib != lb.end() && ia->second == ib->second;
    }
    return a.symbol == b.symbol;  // both free
  }
  if (a.symbol != b.symbol || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!alpha_term(a.args[i], b.args[i], la, lb)) return false;
  return true;
}

bool alpha_rec(const Formula::Ptr& a, const Formula::Ptr& b, VarMap la, VarMap lb,
               int depth) {
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Formula::Kind::Atom:
      if (a->predicate() != b->predicate() || a->args().size() != b->args().size())
        return false;
      for (size_t i = 0; i < a->args().size(); ++i)
        if (!alpha_term(a->args()[i], b->args()[i], la, lb)) return false;
      return true;
    case Formula::Kind::Not:
      return alpha_rec(a->lhs(), b->lhs(), la, lb, depth);
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      return alpha_rec(a->lhs(), b->lhs(), la, lb, depth) &&
             alpha_rec(a->rhs(), b->rhs(), la, lb, depth);
    case Formula::Kind::Forall: {
      if (a->bound_var().sort != b->bound_var().sort) return false;
      la[var_key(a->bound_var())] = depth;
      lb[var_key(b->bound_var())] = depth;
      return alpha_rec(a->body(), b->body(), std::move(la), std::move(lb), depth + 1);
    }
    case Formula::Kind::Believes:
    case Formula::Kind::Perceives:
      return alpha_term(a->agent(), b->agent(), la, lb) &&
             alpha_term(a->time(), b->time(), la, lb) &&
             alpha_rec(a->body(), b->body(), la, lb, depth);
  }
  return false;
}

}  // namespace

bool alpha_equivalent(const Formula::Ptr& a, const Formula::Ptr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  return alpha_rec(a, b, {}, {}, 0);
}

// ---------------------------------------------------------------------------
// Symbol collection

void collect_constants(const Term& t, std::map<std::string, Sort>& out) {
  if (t.is_constant()) out.emplace(t.symbol, t.sort);
  for (const Term& a : t.args) collect_constants(a, out);
}

void collect_constants(const Formula::Ptr& f, std::map<std::string, Sort>& out) {
  switch (f->kind()) {
    case Formula::Kind::Atom:
      for (const Term& a : f->args()) collect_constants(a, out);
      return;
    case Formula::Kind::Not:
      collect_constants(f->lhs(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      collect_constants(f->lhs(), out);
      collect_constants(f->rhs(), out);
      return;
    case Formula::Kind::Forall:
      collect_constants(f->body(), out);
      return;
    case Formula::Kind::Believes:
    case Formula::Kind::Perceives:
      collect_constants(f->agent(), out);
      collect_constants(f->time(), out);
      collect_constants(f->body(), out);
      return;
  }
}

void collect_symbols(const Formula::Ptr& f, std::set<std::string>& out) {
  switch (f->kind()) {
    case Formula::Kind::Atom:
      out.insert(f->predicate());
      for (const Term& a : f->args()) collect_term_symbols(a, out);
      return;
    case Formula::Kind::Not:
      collect_symbols(f->lhs(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      collect_symbols(f->lhs(), out);
      collect_symbols(f->rhs(), out);
      return;
    case Formula::Kind::Forall:
      out.insert(f->bound_var().symbol);
      collect_symbols(f->body(), out);
      return;
    case Formula::Kind::Believes:
    case Formula::Kind::Perceives:
      collect_term_symbols(f->agent(), out);
      collect_term_symbols(f->time(), out);
      collect_symbols(f->body(), out);
      return;
  }
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

// Collects the maximal chain of immediately nested foralls.
const Formula* forall_chain(const Formula* f, std::vector<Term>& vars) {
  while (f->kind() == Formula::Kind::Forall) {
    vars.push_back(f->bound_var());
    f = f->body().get();
  }
  return f;
}

void render_binders(std::string& out, const std::vector<Term>& vars) {
  out += '(';
  for (size_t i = 0; i < vars.size(); ++i) {
    if (i) out += ' ';
    if (vars[i].sort == Sort::Object) {
      out += vars[i].symbol;
    } else {
      out += '(';
      out += vars[i].symbol;
      out += ' ';
      out += sort_name(vars[i].sort);
      out += ')';
    }
  }
  out += ')';
}

void render_rec(const Formula* f, std::string& out) {
  switch (f->kind()) {
    case Formula::Kind::Atom: {
      if (f->args().empty()) {
        out += f->predicate();
        return;
      }
      out += '(';
      out += f->predicate();
      for (const Term& a : f->args()) {
        out += ' ';
        out += a.render();
      }
      out += ')';
      return;
    }
    case Formula::Kind::Not: {
      // (not (forall vs (not phi))) renders as the defined existential.
      const Formula* inner = f->lhs().get();
      if (inner->kind() == Formula::Kind::Forall) {
        std::vector<Term> vars;
        const Formula* matrix = forall_chain(inner, vars);
        if (matrix->kind() == Formula::Kind::Not) {
          out += "(exists ";
          render_binders(out, vars);
          out += ' ';
          render_rec(matrix->lhs().get(), out);
          out += ')';
          return;
        }
      }
      out += "(not ";
      render_rec(inner, out);
      out += ')';
      return;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff: {
      const char* head = f->kind() == Formula::Kind::And       ? "and"
                         : f->kind() == Formula::Kind::Or      ? "or"
                         : f->kind() == Formula::Kind::Implies ? "implies"
                                                               : "iff";
      out += '(';
      out += head;
      out += ' ';
      render_rec(f->lhs().get(), out);
      out += ' ';
      render_rec(f->rhs().get(), out);
      out += ')';
      return;
    }
    case Formula::Kind::Forall: {
      std::vector<Term> vars;
      const Formula* matrix = forall_chain(f, vars);
      out += "(forall ";
      render_binders(out, vars);
      out += ' ';
      render_rec(matrix, out);
      out += ')';
      return;
    }
    case Formula::Kind::Believes:
    case Formula::Kind::Perceives: {
      out += f->kind() == Formula::Kind::Believes ? "(Believes! " : "(Perceives! ";
      out += f->agent().render();
      out += ' ';
      out += f->time().render();
      out += ' ';
      render_rec(f->body().get(), out);
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string Formula::render() const {
  std::string out;
  render_rec(this, out);
  return out;
}

}  // namespace mucalc
