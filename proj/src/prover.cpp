#include "mucalc/prover.hpp"

#include <algorithm>

#include "mucalc/clausify.hpp"
#include "mucalc/shadow.hpp"

namespace mucalc {
namespace {

int rank_of(const std::string& reason) {
  if (reason == "timeout") return 4;
  if (reason == "clause-limit") return 3;
  if (reason == "depth-limit") return 2;
  if (reason == "saturated") return 1;
  return 0;
}

ProofPtr assumption_node(const std::string& label, Formula::Ptr conclusion) {
  auto node = std::make_shared<ProofNode>();
  node->kind = ProofNode::Kind::Assumption;
  node->label = label;
  node->conclusion = std::move(conclusion);
  return node;
}

// Collects which order predicates are visible to a first-order call:
// occurrences inside modal bodies are opaque after shadowing, so they do
// not count.
void scan_order_predicates(const Formula::Ptr& f, bool& uses_less, std::set<Sort>& eq_sorts) {
  switch (f->kind()) {
    case Formula::Kind::Atom:
      if (f->predicate() == "<") uses_less = true;
      if (f->predicate() == "=" && f->args().size() == 2) eq_sorts.insert(f->args()[0].sort);
      return;
    case Formula::Kind::Not:
      scan_order_predicates(f->lhs(), uses_less, eq_sorts);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      scan_order_predicates(f->lhs(), uses_less, eq_sorts);
      scan_order_predicates(f->rhs(), uses_less, eq_sorts);
      return;
    case Formula::Kind::Forall:
      scan_order_predicates(f->body(), uses_less, eq_sorts);
      return;
    case Formula::Kind::Believes:
    case Formula::Kind::Perceives:
      return;
  }
}

bool is_equality_unit(const Formula::Ptr& unit) {
  const Formula::Ptr& atom = unit->kind() == Formula::Kind::Not ? unit->lhs() : unit;
  return atom->kind() == Formula::Kind::Atom && atom->predicate() == "=";
}

}  // namespace

std::vector<Formula::Ptr> equality_axioms(Sort sort) {
  const Term x = Term::variable("x", sort);
  const Term y = Term::variable("y", sort);
  const Term z = Term::variable("z", sort);
  auto eq = [](const Term& a, const Term& b) { return Formula::atom("=", {a, b}); };
  std::vector<Formula::Ptr> out;
  out.push_back(Formula::forall(x, eq(x, x)));
  out.push_back(Formula::forall(x, Formula::forall(y, Formula::implies(eq(x, y), eq(y, x)))));
  out.push_back(Formula::forall(
      x, Formula::forall(
             y, Formula::forall(z, Formula::implies(Formula::conj(eq(x, y), eq(y, z)),
                                                    eq(x, z))))));
  return out;
}

std::vector<InputClause> prepare_fo_inputs(const std::vector<FoSource>& sources) {
  std::set<std::string> taken;
  for (const auto& s : sources) collect_symbols(s.formula, taken);

  ShadowMap map(taken);
  std::vector<Formula::Ptr> shadowed;
  shadowed.reserve(sources.size());
  for (const auto& s : sources) shadowed.push_back(shadow(s.formula, map));

  FreshNames fresh;
  fresh.taken = taken;
  for (const auto& e : map.entries()) fresh.taken.insert(e.predicate);

  std::vector<InputClause> inputs;
  for (std::size_t i = 0; i < shadowed.size(); ++i)
    for (auto& c : clausify(shadowed[i], fresh))
      inputs.push_back(InputClause{std::move(c), static_cast<int>(i)});
  return inputs;
}

TimeOracle oracle_for(const Problem& problem) {
  TimeOracle oracle;
  for (const auto& [name, sort] : problem.declarations)
    if (sort == Sort::Time) oracle.note_constant(Term::constant(name, sort));
  std::vector<TimeFact> facts;
  for (const auto& [label, f] : problem.assumptions) {
    (void)label;
    extract_time_facts(f, facts);
  }
  for (const auto& fact : facts) oracle.add_fact(fact);
  return oracle;
}

Prover::Prover(const Problem& problem, ProverOptions options)
    : problem_(problem), options_(options), start_(std::chrono::steady_clock::now()) {
  oracle_ = oracle_for(problem_);
  horizon_ = oracle_.constants();
}

std::chrono::milliseconds Prover::remaining() const {
  const auto used = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start_);
  return options_.timeout - used;
}

void Prover::note_reason(const std::string& reason) {
  const int rank = rank_of(reason);
  if (rank > reason_rank_) {
    reason_rank_ = rank;
    reason_ = reason;
  }
}

bool Prover::closure_time_ok(const Term& premise_time, const Term& goal_time) const {
  if (oracle_.less(premise_time, goal_time) == Truth::True) return true;
  return options_.reflexive_belief_time &&
         oracle_.equal_times(premise_time, goal_time) == Truth::True;
}

ProofPtr Prover::attempt(const Formula::Ptr& goal, const Context& ctx, int depth) {
  if (remaining() <= std::chrono::milliseconds(0)) {
    note_reason("timeout");
    return nullptr;
  }

  // Direct assumption.
  for (const auto& [label, f] : ctx)
    if (alpha_equivalent(f, goal)) return assumption_node(label, goal);

  if (goal->kind() == Formula::Kind::Believes) {
    const Term& agent = goal->agent();
    const Term& time = goal->time();
    const Formula::Ptr& body = goal->body();

    // Perception rule: a perceived body becomes believed at any strictly
    // later time.
    for (const auto& [label, f] : ctx) {
      if (f->kind() != Formula::Kind::Perceives) continue;
      if (f->agent() != agent) continue;
      if (!alpha_equivalent(f->body(), body)) continue;
      if (oracle_.less(f->time(), time) != Truth::True) continue;
      auto node = std::make_shared<ProofNode>();
      node->kind = ProofNode::Kind::Perception;
      node->conclusion = goal;
      node->premise = assumption_node(label, f);
      return node;
    }

    // Belief closure: collect everything the agent believes at eligible
    // times (perceptions promoted through the perception rule at the
    // earliest declared time that fits) and derive the body from those
    // belief bodies one level down.
    std::vector<ProofPtr> premises;
    for (const auto& [label, f] : ctx) {
      if (f->kind() == Formula::Kind::Believes && f->agent() == agent &&
          closure_time_ok(f->time(), time)) {
        premises.push_back(assumption_node(label, f));
        continue;
      }
      if (f->kind() == Formula::Kind::Perceives && f->agent() == agent) {
        for (const auto& ti : horizon_) {
          if (oracle_.less(f->time(), ti) != Truth::True) continue;
          if (!closure_time_ok(ti, time)) continue;
          auto node = std::make_shared<ProofNode>();
          node->kind = ProofNode::Kind::Perception;
          node->conclusion = Formula::believes(agent, ti, f->body());
          node->premise = assumption_node(label, f);
          premises.push_back(std::move(node));
          break;
        }
      }
    }
    // The pool may be empty: the time order is common knowledge, so a
    // belief in a pure time fact needs no belief premises at all.
    if (depth <= 0) {
      note_reason("depth-limit");
    } else {
      Context inner;
      for (std::size_t i = 0; i < premises.size(); ++i)
        inner.emplace_back("p" + std::to_string(i + 1), premises[i]->conclusion->body());
      if (auto sub = attempt(body, inner, depth - 1)) {
        auto node = std::make_shared<ProofNode>();
        node->kind = ProofNode::Kind::BeliefClosure;
        node->conclusion = goal;
        node->premises = std::move(premises);
        node->derivation = sub;
        return node;
      }
    }
  }

  return attempt_fo(goal, ctx);
}

ProofPtr Prover::attempt_fo(const Formula::Ptr& goal, const Context& ctx) {
  bool uses_less = false;
  std::set<Sort> eq_sorts;
  for (const auto& [label, f] : ctx) {
    (void)label;
    scan_order_predicates(f, uses_less, eq_sorts);
  }
  scan_order_predicates(goal, uses_less, eq_sorts);

  std::vector<FoSource> sources;
  for (const auto& [label, f] : ctx)
    sources.push_back(FoSource{FoSource::Kind::Assumption, label, f});
  for (const auto& unit : oracle_.theory()) {
    const bool wanted = is_equality_unit(unit) ? eq_sorts.count(Sort::Time) > 0 : uses_less;
    if (wanted) sources.push_back(FoSource{FoSource::Kind::Theory, "", unit});
  }
  for (Sort sort : {Sort::Agent, Sort::Time, Sort::Object, Sort::Fluent})
    if (eq_sorts.count(sort))
      for (const auto& axiom : equality_axioms(sort))
        sources.push_back(FoSource{FoSource::Kind::Theory, "", axiom});
  sources.push_back(FoSource{FoSource::Kind::NegatedGoal, "", Formula::negation(goal)});

  const auto inputs = prepare_fo_inputs(sources);

  Budget budget = options_.fo_budget;
  const auto left = remaining();
  if (left <= std::chrono::milliseconds(0)) {
    note_reason("timeout");
    return nullptr;
  }
  budget.max_time = std::min(budget.max_time, left);

  ++fo_calls_;
  FoResult result = prove_fo(inputs, budget);
  clauses_kept_ += result.kept;

  switch (result.outcome) {
    case FoOutcome::Proved: {
      auto node = std::make_shared<ProofNode>();
      node->kind = ProofNode::Kind::Fo;
      node->conclusion = goal;
      node->sources = std::move(sources);
      node->refutation = std::move(*result.refutation);
      return node;
    }
    case FoOutcome::Saturated:
      note_reason("saturated");
      return nullptr;
    case FoOutcome::ClauseLimit:
      note_reason("clause-limit");
      return nullptr;
    case FoOutcome::Timeout:
      note_reason("timeout");
      return nullptr;
  }
  return nullptr;
}

Verdict Prover::prove() {
  Context top;
  for (const auto& [label, f] : problem_.assumptions) top.emplace_back(label, f);

  Verdict verdict;
  verdict.proof = attempt(problem_.goal, top, options_.max_depth);
  verdict.proved = verdict.proof != nullptr;
  if (!verdict.proved) verdict.reason = reason_rank_ > 0 ? reason_ : "saturated";
  verdict.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start_);
  verdict.fo_calls = fo_calls_;
  verdict.clauses_kept = clauses_kept_;
  return verdict;
}

Verdict prove(const Problem& problem, const ProverOptions& options) {
  Prover prover(problem, options);
  return prover.prove();
}

}  // namespace mucalc
