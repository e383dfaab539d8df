#include "mucalc/fo_prover.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>

#include "mucalc/unify.hpp"

namespace mucalc {
namespace {

std::size_t term_weight(const Term& t) {
  std::size_t w = 1;
  for (const auto& a : t.args) w += term_weight(a);
  return w;
}

std::size_t clause_weight(const Clause& c) {
  std::size_t w = 0;
  for (const auto& l : c.literals) {
    w += 1;
    for (const auto& a : l.args) w += term_weight(a);
  }
  return w;
}

class Saturation {
 public:
  Saturation(const Budget& budget) : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  std::chrono::milliseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start_);
  }
  bool out_of_time() const { return elapsed() > budget_.max_time; }
  bool out_of_clauses() const { return all_.size() >= budget_.max_clauses; }

  // Adds a canonical candidate unless it is a tautology, a duplicate, or
  // forward-subsumed by a kept clause. Records the empty clause id.
  void add(TraceClause step) {
    ++generated_;
    if (tautology(step.clause)) return;
    step.rendered = step.clause.render();
    if (!seen_.insert(step.rendered).second) return;
    if (!step.clause.empty())
      for (const auto& kept : all_)
        if (subsumes(kept.clause, step.clause)) return;
    const int id = static_cast<int>(all_.size());
    all_.push_back(std::move(step));
    if (all_[id].clause.empty()) {
      empty_id_ = id;
      return;
    }
    passive_weight_.emplace(all_[id].clause.literals.size() == 1 ? 0 : 1,
                            clause_weight(all_[id].clause), id);
    passive_age_.insert(id);
  }

  bool done() const { return empty_id_ >= 0; }
  int empty_id() const { return empty_id_; }
  bool passive_empty() const { return passive_age_.empty(); }
  std::size_t generated() const { return generated_; }
  std::size_t kept() const { return all_.size(); }
  const std::vector<TraceClause>& all() const { return all_; }
  const std::vector<int>& active() const { return active_; }

  // Unit-preference pick; every fifth choice takes the oldest passive
  // clause so heavy clauses cannot starve.
  int pick() {
    ++picks_;
    int id;
    if (picks_ % 5 == 0) {
      id = *passive_age_.begin();
    } else {
      id = std::get<2>(*passive_weight_.begin());
    }
    passive_age_.erase(id);
    passive_weight_.erase(std::make_tuple(all_[id].clause.literals.size() == 1 ? 0 : 1,
                                          clause_weight(all_[id].clause), id));
    active_.push_back(id);
    return id;
  }

 private:
  const Budget& budget_;
  std::chrono::steady_clock::time_point start_;
  std::vector<TraceClause> all_;
  std::set<std::string> seen_;
  std::vector<int> active_;
  std::set<std::tuple<int, std::size_t, int>> passive_weight_;
  std::set<int> passive_age_;
  std::size_t generated_ = 0;
  int picks_ = 0;
  int empty_id_ = -1;
};

Clause build_resolvent(const Clause& a, const Clause& b_renamed, int la, int lb,
                       const Subst& sigma) {
  std::vector<Literal> lits;
  for (int i = 0; i < static_cast<int>(a.literals.size()); ++i)
    if (i != la) lits.push_back(apply_subst(a.literals[i], sigma));
  for (int j = 0; j < static_cast<int>(b_renamed.literals.size()); ++j)
    if (j != lb) lits.push_back(apply_subst(b_renamed.literals[j], sigma));
  return Clause(std::move(lits));
}

Refutation extract(const std::vector<TraceClause>& all, int empty_id) {
  std::set<int> need;
  std::vector<int> stack{empty_id};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (!need.insert(id).second) continue;
    const TraceClause& t = all[id];
    if (t.parent_a >= 0) stack.push_back(t.parent_a);
    if (t.parent_b >= 0) stack.push_back(t.parent_b);
  }
  std::map<int, int> remap;
  Refutation out;
  for (int id : need) {  // std::set iterates ascending: parents precede children
    remap[id] = static_cast<int>(out.steps.size());
    TraceClause step = all[id];
    if (step.parent_a >= 0) step.parent_a = remap.at(step.parent_a);
    if (step.parent_b >= 0) step.parent_b = remap.at(step.parent_b);
    out.steps.push_back(std::move(step));
  }
  return out;
}

}  // namespace

FoResult prove_fo(const std::vector<InputClause>& inputs, const Budget& budget) {
  Saturation s(budget);
  for (const auto& in : inputs) {
    TraceClause t;
    t.kind = TraceClause::Kind::Input;
    t.clause = canonical(in.clause);
    t.premise_index = in.premise_index;
    s.add(std::move(t));
    if (s.done()) break;
  }

  FoOutcome outcome = FoOutcome::Saturated;
  while (!s.done()) {
    if (s.passive_empty()) {
      outcome = FoOutcome::Saturated;
      break;
    }
    if (s.out_of_time()) {
      outcome = FoOutcome::Timeout;
      break;
    }
    if (s.out_of_clauses()) {
      outcome = FoOutcome::ClauseLimit;
      break;
    }

    const int given = s.pick();
    // Copy: adding clauses below may reallocate the backing store.
    const Clause g = s.all()[given].clause;

    // Factoring on the given clause.
    for (int i = 0; i < static_cast<int>(g.literals.size()) && !s.done(); ++i) {
      for (int j = i + 1; j < static_cast<int>(g.literals.size()) && !s.done(); ++j) {
        const Literal& li = g.literals[i];
        const Literal& lj = g.literals[j];
        if (li.positive != lj.positive || li.predicate != lj.predicate) continue;
        auto sigma = unify_atoms(li, lj);
        if (!sigma) continue;
        TraceClause t;
        t.kind = TraceClause::Kind::Factor;
        t.clause = canonical(apply_subst(g, *sigma));
        t.parent_a = given;
        t.literal_a = i;
        t.literal_b = j;
        s.add(std::move(t));
      }
    }

    // Binary resolution of the given clause against every active clause,
    // itself included (covers self-resolving clauses).
    const auto active_snapshot = s.active();
    for (int other : active_snapshot) {
      if (s.done() || s.out_of_time() || s.out_of_clauses()) break;
      const Clause ob = rename_variables(s.all()[other].clause, "w");
      for (int i = 0; i < static_cast<int>(g.literals.size()) && !s.done(); ++i) {
        for (int j = 0; j < static_cast<int>(ob.literals.size()) && !s.done(); ++j) {
          const Literal& li = g.literals[i];
          const Literal& lj = ob.literals[j];
          if (li.positive == lj.positive) continue;
          auto sigma = unify_atoms(li, lj);
          if (!sigma) continue;
          TraceClause t;
          t.kind = TraceClause::Kind::Resolve;
          t.clause = canonical(build_resolvent(g, ob, i, j, *sigma));
          t.parent_a = given;
          t.parent_b = other;
          t.literal_a = i;
          t.literal_b = j;
          s.add(std::move(t));
        }
      }
    }
  }

  FoResult result;
  result.generated = s.generated();
  result.kept = s.kept();
  result.elapsed = s.elapsed();
  if (s.done()) {
    result.outcome = FoOutcome::Proved;
    result.refutation = extract(s.all(), s.empty_id());
  } else {
    result.outcome = outcome;
  }
  return result;
}

std::optional<Clause> replay_resolution(const Clause& a, const Clause& b, int literal_a,
                                        int literal_b) {
  const Clause rb = rename_variables(b, "w");
  if (literal_a < 0 || literal_a >= static_cast<int>(a.literals.size())) return std::nullopt;
  if (literal_b < 0 || literal_b >= static_cast<int>(rb.literals.size())) return std::nullopt;
  const Literal& la = a.literals[literal_a];
  const Literal& lb = rb.literals[literal_b];
  if (la.positive == lb.positive) return std::nullopt;
  auto sigma = unify_atoms(la, lb);
  if (!sigma) return std::nullopt;
  return canonical(build_resolvent(a, rb, literal_a, literal_b, *sigma));
}

std::optional<Clause> replay_factor(const Clause& a, int literal_a, int literal_b) {
  if (literal_a < 0 || literal_a >= static_cast<int>(a.literals.size())) return std::nullopt;
  if (literal_b < 0 || literal_b >= static_cast<int>(a.literals.size())) return std::nullopt;
  if (literal_a == literal_b) return std::nullopt;
  const Literal& la = a.literals[literal_a];
  const Literal& lb = a.literals[literal_b];
  if (la.positive != lb.positive || la.predicate != lb.predicate) return std::nullopt;
  auto sigma = unify_atoms(la, lb);
  if (!sigma) return std::nullopt;
  return canonical(apply_subst(a, *sigma));
}

}  // namespace mucalc
