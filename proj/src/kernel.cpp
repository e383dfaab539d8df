#include "mucalc/kernel.hpp"

#include <map>

namespace mucalc {
namespace {

// Label -> formula context the node's assumptions are resolved against.
using Env = std::map<std::string, Formula::Ptr>;

class Checker {
 public:
  Checker(const Problem& problem, const ProverOptions& options)
      : options_(options), oracle_(oracle_for(problem)) {
    for (const auto& t : oracle_.constants()) horizon_[t.render()] = true;
  }

  CheckResult check(const ProofPtr& node, const Env& env, const std::string& path) {
    if (!node) return CheckResult::fail(path + ": missing node");
    if (!node->conclusion) return CheckResult::fail(path + ": missing conclusion");
    switch (node->kind) {
      case ProofNode::Kind::Assumption:
        return check_assumption(*node, env, path);
      case ProofNode::Kind::Theory:
        return check_theory(node->conclusion, path);
      case ProofNode::Kind::Perception:
        return check_perception(*node, env, path);
      case ProofNode::Kind::BeliefClosure:
        return check_closure(*node, env, path);
      case ProofNode::Kind::Fo:
        return check_fo(*node, env, path);
    }
    return CheckResult::fail(path + ": unknown rule");
  }

 private:
  CheckResult check_assumption(const ProofNode& node, const Env& env, const std::string& path) {
    auto it = env.find(node.label);
    if (it == env.end())
      return CheckResult::fail(path + ": assumption '" + node.label + "' not in context");
    if (!alpha_equivalent(it->second, node.conclusion))
      return CheckResult::fail(path + ": assumption '" + node.label +
                               "' does not conclude the context formula");
    return CheckResult::pass();
  }

  // A theory source must be a ground time-order unit the oracle decides,
  // or one of the fixed equality axioms.
  CheckResult check_theory(const Formula::Ptr& f, const std::string& path) {
    for (Sort sort : {Sort::Agent, Sort::Time, Sort::Object, Sort::Fluent})
      for (const auto& axiom : equality_axioms(sort))
        if (alpha_equivalent(f, axiom)) return CheckResult::pass();
    auto ground_pair = [](const Formula::Ptr& g) -> const Formula::Ptr* {
      if (g->kind() != Formula::Kind::Atom || g->args().size() != 2) return nullptr;
      for (const auto& a : g->args())
        if (a.sort != Sort::Time || !a.is_ground()) return nullptr;
      return &g;
    };
    const bool negated = f->kind() == Formula::Kind::Not;
    const Formula::Ptr& atom = negated ? f->lhs() : f;
    if (!atom || !ground_pair(atom))
      return CheckResult::fail(path + ": theory fact is not a ground time relation: " +
                               f->render());
    const Term& a = atom->args()[0];
    const Term& b = atom->args()[1];
    bool holds = false;
    if (atom->predicate() == "<")
      holds = oracle_.less(a, b) == (negated ? Truth::False : Truth::True);
    else if (atom->predicate() == "=")
      holds = negated ? oracle_.distinct(a, b) == Truth::True
                      : oracle_.equal_times(a, b) == Truth::True;
    else
      return CheckResult::fail(path + ": theory fact uses predicate '" + atom->predicate() +
                               "'");
    if (!holds)
      return CheckResult::fail(path + ": theory fact not decided by the time order: " +
                               f->render());
    return CheckResult::pass();
  }

  CheckResult check_perception(const ProofNode& node, const Env& env, const std::string& path) {
    auto sub = check(node.premise, env, path + "/premise");
    if (!sub.ok) return sub;
    const Formula::Ptr& from = node.premise->conclusion;
    const Formula::Ptr& to = node.conclusion;
    if (from->kind() != Formula::Kind::Perceives)
      return CheckResult::fail(path + ": perception premise is not a perception");
    if (to->kind() != Formula::Kind::Believes)
      return CheckResult::fail(path + ": perception conclusion is not a belief");
    if (from->agent() != to->agent())
      return CheckResult::fail(path + ": perception changes the agent");
    if (!alpha_equivalent(from->body(), to->body()))
      return CheckResult::fail(path + ": perception changes the body");
    if (!horizon_.count(to->time().render()))
      return CheckResult::fail(path + ": belief time " + to->time().render() +
                               " is outside the declared horizon");
    if (oracle_.less(from->time(), to->time()) != Truth::True)
      return CheckResult::fail(path + ": " + from->time().render() + " < " +
                               to->time().render() + " is not established");
    return CheckResult::pass();
  }

  CheckResult check_closure(const ProofNode& node, const Env& env, const std::string& path) {
    const Formula::Ptr& goal = node.conclusion;
    if (goal->kind() != Formula::Kind::Believes)
      return CheckResult::fail(path + ": closure conclusion is not a belief");
    // An empty premise pool is legitimate: the time order alone is common
    // knowledge at every nesting level.
    Env inner;
    for (std::size_t i = 0; i < node.premises.size(); ++i) {
      const std::string sub_path = path + "/premises[" + std::to_string(i) + "]";
      auto sub = check(node.premises[i], env, sub_path);
      if (!sub.ok) return sub;
      const Formula::Ptr& premise = node.premises[i]->conclusion;
      if (premise->kind() != Formula::Kind::Believes)
        return CheckResult::fail(sub_path + ": closure premise is not a belief");
      if (premise->agent() != goal->agent())
        return CheckResult::fail(sub_path + ": closure premise names another agent");
      if (!time_eligible(premise->time(), goal->time()))
        return CheckResult::fail(sub_path + ": premise time " + premise->time().render() +
                                 " is not admissible before " + goal->time().render());
      inner["p" + std::to_string(i + 1)] = premise->body();
    }
    auto sub = check(node.derivation, inner, path + "/derivation");
    if (!sub.ok) return sub;
    if (!alpha_equivalent(node.derivation->conclusion, goal->body()))
      return CheckResult::fail(path + ": subderivation concludes the wrong body");
    return CheckResult::pass();
  }

  CheckResult check_fo(const ProofNode& node, const Env& env, const std::string& path) {
    for (std::size_t i = 0; i < node.sources.size(); ++i) {
      const std::string sub_path = path + "/sources[" + std::to_string(i) + "]";
      const FoSource& src = node.sources[i];
      if (!src.formula) return CheckResult::fail(sub_path + ": missing formula");
      switch (src.kind) {
        case FoSource::Kind::Assumption: {
          auto it = env.find(src.label);
          if (it == env.end())
            return CheckResult::fail(sub_path + ": assumption '" + src.label +
                                     "' not in context");
          if (!alpha_equivalent(it->second, src.formula))
            return CheckResult::fail(sub_path + ": assumption '" + src.label +
                                     "' differs from the context formula");
          break;
        }
        case FoSource::Kind::Theory: {
          auto sub = check_theory(src.formula, sub_path);
          if (!sub.ok) return sub;
          break;
        }
        case FoSource::Kind::NegatedGoal:
          if (!alpha_equivalent(src.formula, Formula::negation(node.conclusion)))
            return CheckResult::fail(sub_path + ": negated goal does not match the conclusion");
          break;
      }
    }

    std::vector<InputClause> inputs;
    try {
      inputs = prepare_fo_inputs(node.sources);
    } catch (const std::exception& e) {
      return CheckResult::fail(path + ": sources do not clausify: " + e.what());
    }

    const auto& steps = node.refutation.steps;
    if (steps.empty()) return CheckResult::fail(path + ": empty refutation");
    std::vector<Clause> computed;
    computed.reserve(steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const std::string sp = path + "/refutation[" + std::to_string(i) + "]";
      const TraceClause& step = steps[i];
      const std::string recorded = step.rendered.empty() ? step.clause.render() : step.rendered;
      switch (step.kind) {
        case TraceClause::Kind::Input: {
          bool found = false;
          for (const auto& in : inputs) {
            if (in.premise_index != step.premise_index) continue;
            if (in.clause.render() == recorded) {
              computed.push_back(in.clause);
              found = true;
              break;
            }
          }
          if (!found)
            return CheckResult::fail(sp + ": input clause is not produced by source " +
                                     std::to_string(step.premise_index) + ": " + recorded);
          break;
        }
        case TraceClause::Kind::Resolve: {
          if (step.parent_a < 0 || step.parent_b < 0 ||
              step.parent_a >= static_cast<int>(i) || step.parent_b >= static_cast<int>(i))
            return CheckResult::fail(sp + ": parent out of range");
          auto c = replay_resolution(computed[step.parent_a], computed[step.parent_b],
                                     step.literal_a, step.literal_b);
          if (!c) return CheckResult::fail(sp + ": literals do not resolve");
          if (c->render() != recorded)
            return CheckResult::fail(sp + ": replayed resolvent " + c->render() +
                                     " differs from recorded " + recorded);
          computed.push_back(std::move(*c));
          break;
        }
        case TraceClause::Kind::Factor: {
          if (step.parent_a < 0 || step.parent_a >= static_cast<int>(i))
            return CheckResult::fail(sp + ": parent out of range");
          auto c = replay_factor(computed[step.parent_a], step.literal_a, step.literal_b);
          if (!c) return CheckResult::fail(sp + ": literals do not factor");
          if (c->render() != recorded)
            return CheckResult::fail(sp + ": replayed factor " + c->render() +
                                     " differs from recorded " + recorded);
          computed.push_back(std::move(*c));
          break;
        }
      }
    }
    if (!computed.back().empty())
      return CheckResult::fail(path + ": refutation does not end in the empty clause");
    return CheckResult::pass();
  }

  bool time_eligible(const Term& premise_time, const Term& goal_time) {
    if (oracle_.less(premise_time, goal_time) == Truth::True) return true;
    return options_.reflexive_belief_time &&
           oracle_.equal_times(premise_time, goal_time) == Truth::True;
  }

  const ProverOptions& options_;
  TimeOracle oracle_;
  std::map<std::string, bool> horizon_;
};

}  // namespace

CheckResult check_proof(const Problem& problem, const ProofPtr& proof,
                        const ProverOptions& options) {
  Checker checker(problem, options);
  Env env;
  for (const auto& [label, f] : problem.assumptions) env[label] = f;
  auto result = checker.check(proof, env, "proof");
  if (!result.ok) return result;
  if (!alpha_equivalent(proof->conclusion, problem.goal))
    return CheckResult::fail("proof: conclusion does not match the problem goal");
  return CheckResult::pass();
}

}  // namespace mucalc
