#include "mucalc/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "mucalc/parser.hpp"

namespace mucalc {
namespace {

void require_arg(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument("scenario: " + message);
}

void check_symbol(const std::string& name, const std::string& role) {
  require_arg(!name.empty(), role + " name is empty");
  for (char c : name)
    require_arg(!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' &&
                    c != ';' && c != '"',
                role + " name '" + name + "' is not a plain symbol");
}

long indexed_time(const std::string& name, const std::string& role) {
  check_symbol(name, role);
  auto idx = time_index(Term::constant(name, Sort::Time));
  require_arg(idx.has_value(), role + " '" + name + "' must be an indexed time literal");
  return *idx;
}

struct Pieces {
  Term sys, stu, ea, eb, obj, prop, base, ta, tb, tg;
  Formula::Ptr has_prop;     // HasProp(obj, prop)
  Formula::Ptr personal;     // PersonalObject(obj)
  Formula::Ptr same;         // Same(ea, eb)
};

Pieces validate(const TeleportScenario& s) {
  check_symbol(s.system, "system");
  check_symbol(s.student, "student");
  check_symbol(s.embodiments.first, "embodiment");
  check_symbol(s.embodiments.second, "embodiment");
  check_symbol(s.personal_object, "personal object");
  check_symbol(s.property, "property");
  require_arg(s.embodiments.first != s.embodiments.second,
              "embodiment constants must be distinct");
  const long base = indexed_time(s.base_time, "base time");
  const long ta = indexed_time(s.time_a, "first belief time");
  const long tb = indexed_time(s.time_b, "second belief time");
  const long tg = indexed_time(s.goal_time, "goal time");
  require_arg(base < ta && ta < tb && tb < tg, "times must be strictly increasing");

  Pieces p;
  p.sys = Term::constant(s.system, Sort::Agent);
  p.stu = Term::constant(s.student, Sort::Agent);
  p.ea = Term::constant(s.embodiments.first, Sort::Agent);
  p.eb = Term::constant(s.embodiments.second, Sort::Agent);
  p.obj = Term::constant(s.personal_object, Sort::Object);
  p.prop = Term::constant(s.property, Sort::Fluent);
  p.base = Term::constant(s.base_time, Sort::Time);
  p.ta = Term::constant(s.time_a, Sort::Time);
  p.tb = Term::constant(s.time_b, Sort::Time);
  p.tg = Term::constant(s.goal_time, Sort::Time);
  p.has_prop = Formula::atom("HasProp", {p.obj, p.prop});
  p.personal = Formula::atom("PersonalObject", {p.obj});
  p.same = Formula::atom("Same", {p.ea, p.eb});
  return p;
}

void declare_from(const Problem& p, std::map<std::string, Sort>& out) {
  for (const auto& [label, f] : p.assumptions) {
    (void)label;
    collect_constants(f, out);
  }
  collect_constants(p.goal, out);
}

Problem finish(Problem p) {
  p.declarations.clear();
  declare_from(p, p.declarations);
  return p;
}

Problem entry(const std::string& text) { return parse_problem(text); }

}  // namespace

Formula::Ptr identity_criterion(const TeleportScenario& s) {
  const Pieces p = validate(s);
  const Term x = Term::variable("x", Sort::Agent);
  const Term y = Term::variable("y", Sort::Agent);
  const Term o = Term::variable("o", Sort::Object);
  const Term u = Term::variable("u", Sort::Fluent);
  const Term ta = Term::variable("ta", Sort::Time);
  const Term tb = Term::variable("tb", Sort::Time);

  auto believes_prop = [&](const Term& who, const Term& when) {
    return Formula::believes(who, when, Formula::atom("HasProp", {o, u}));
  };
  Formula::Ptr antecedent = Formula::conj(
      Formula::atom("PersonalObject", {o}),
      Formula::conj(believes_prop(x, ta),
                    Formula::conj(believes_prop(y, tb),
                                  Formula::negation(Formula::atom("=", {ta, tb})))));
  Formula::Ptr body = Formula::implies(antecedent, Formula::atom("Same", {x, y}));
  for (const Term* v : {&tb, &ta, &u, &o, &y, &x}) body = Formula::forall(*v, body);
  return Formula::believes(p.sys, p.base, Formula::believes(p.stu, p.base, body));
}

Problem build_teleport_scenario(const TeleportScenario& s) {
  const Pieces p = validate(s);
  Problem out;
  out.name = "teleport";
  out.assumptions.emplace_back(
      "a1", Formula::believes(
                p.sys, p.ta,
                Formula::believes(p.stu, p.ta, Formula::believes(p.ea, p.ta, p.has_prop))));
  out.assumptions.emplace_back(
      "a2", Formula::believes(
                p.sys, p.tb,
                Formula::believes(p.stu, p.tb, Formula::believes(p.eb, p.tb, p.has_prop))));
  out.assumptions.emplace_back(
      "a3", Formula::believes(p.sys, p.base, Formula::believes(p.stu, p.base, p.personal)));
  out.assumptions.emplace_back("a4", identity_criterion(s));
  out.goal = Formula::believes(p.sys, p.tg, Formula::believes(p.stu, p.tg, p.same));
  return finish(std::move(out));
}

Problem build_teleport_scenario_perception(const TeleportScenario& s) {
  const Pieces p = validate(s);
  const long tb = indexed_time(s.time_b, "second belief time");
  const long tg = indexed_time(s.goal_time, "goal time");
  require_arg(tg >= tb + 2,
              "perception variant needs a declared time strictly between the second belief "
              "time and the goal time");
  Problem out;
  out.name = "teleport-perceive";
  out.assumptions.emplace_back(
      "a1", Formula::perceives(
                p.sys, p.ta,
                Formula::believes(p.stu, p.ta, Formula::believes(p.ea, p.ta, p.has_prop))));
  out.assumptions.emplace_back(
      "a2", Formula::perceives(
                p.sys, p.tb,
                Formula::believes(p.stu, p.tb, Formula::believes(p.eb, p.tb, p.has_prop))));
  out.assumptions.emplace_back(
      "a3", Formula::believes(p.sys, p.base, Formula::believes(p.stu, p.base, p.personal)));
  out.assumptions.emplace_back("a4", identity_criterion(s));
  out.goal = Formula::believes(p.sys, p.tg, Formula::believes(p.stu, p.tg, p.same));
  out = finish(std::move(out));
  // Declare the whole time range so promotions have somewhere to land.
  const long base = indexed_time(s.base_time, "base time");
  for (long i = base; i <= tg; ++i)
    out.declarations.emplace("t" + std::to_string(i), Sort::Time);
  return out;
}

Problem without_assumption(const Problem& p, const std::string& label) {
  Problem out = p;
  auto it = std::find_if(out.assumptions.begin(), out.assumptions.end(),
                         [&](const auto& a) { return a.first == label; });
  if (it == out.assumptions.end())
    throw std::invalid_argument("scenario: no assumption labelled '" + label + "'");
  out.assumptions.erase(it);
  return out;
}

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  auto add = [&](std::string name, Problem p, bool proved) {
    p.name = name;
    out.push_back(CorpusEntry{std::move(name), std::move(p), proved});
  };

  const Problem teleport = build_teleport_scenario();
  add("teleport-default", teleport, true);
  add("teleport-no-A1", without_assumption(teleport, "a1"), false);
  add("teleport-no-A2", without_assumption(teleport, "a2"), false);
  add("teleport-no-A3", without_assumption(teleport, "a3"), false);
  add("teleport-no-A4", without_assumption(teleport, "a4"), false);

  TeleportScenario perceive;
  perceive.goal_time = "t4";
  add("teleport-perceive", build_teleport_scenario_perception(perceive), true);

  TeleportScenario phone;
  phone.personal_object = "phone";
  phone.property = "cracked";
  add("teleport-phone", build_teleport_scenario(phone), true);

  // No-modal-collapse non-theorems: nothing lifts a belief to a fact, a
  // fact to a belief, or one agent's belief to another's.
  add("belief-not-fact", entry(R"((define-problem belief-not-fact
  :declarations ((agent alice))
  :assumptions ((a1 (Believes! alice t1 (Raining))))
  :goal (Raining)))"),
      false);
  add("fact-not-belief", entry(R"((define-problem fact-not-belief
  :declarations ((agent alice))
  :assumptions ((a1 (Raining)))
  :goal (Believes! alice t1 (Raining))))"),
      false);
  add("belief-not-shared", entry(R"((define-problem belief-not-shared
  :declarations ((agent alice bob))
  :assumptions ((a1 (Believes! alice t1 (Raining))))
  :goal (Believes! bob t2 (Raining))))"),
      false);

  // Pure first-order exercises.
  add("fo-socrates", entry(R"((define-problem fo-socrates
  :declarations ((object socrates))
  :assumptions ((a1 (forall x (implies (Man x) (Mortal x))))
                (a2 (Man socrates)))
  :goal (Mortal socrates)))"),
      true);
  add("fo-chain", entry(R"((define-problem fo-chain
  :declarations ((object seed))
  :assumptions ((a1 (Sprout seed))
                (a2 (forall x (implies (Sprout x) (Grows x))))
                (a3 (forall x (implies (Grows x) (Blooms x)))))
  :goal (Blooms seed)))"),
      true);
  add("fo-exists", entry(R"((define-problem fo-exists
  :declarations ((object garden rose))
  :assumptions ((a1 (In rose garden)))
  :goal (exists (x y) (In x y))))"),
      true);
  add("fo-distrib", entry(R"((define-problem fo-distrib
  :declarations ((object door))
  :assumptions ((a1 (or (Locked door) (and (Open door) (Creaks door))))
                (a2 (implies (Locked door) (Stuck door)))
                (a3 (implies (Open door) (Stuck door))))
  :goal (Stuck door)))"),
      true);
  add("fo-affirm-consequent", entry(R"((define-problem fo-affirm-consequent
  :declarations ((object road))
  :assumptions ((a1 (implies (Rained road) (Wet road)))
                (a2 (Wet road)))
  :goal (Rained road)))"),
      false);

  // Belief-closure chains.
  add("belief-mp", entry(R"((define-problem belief-mp
  :declarations ((agent alice) (object grass))
  :assumptions ((a1 (Believes! alice t1 (Wet grass)))
                (a2 (Believes! alice t1 (implies (Wet grass) (Slippery grass)))))
  :goal (Believes! alice t2 (Slippery grass))))"),
      true);
  add("belief-mp-nested", entry(R"((define-problem belief-mp-nested
  :declarations ((agent alice bob) (object kettle))
  :assumptions ((a1 (Believes! alice t1 (Believes! bob t0 (Boiling kettle))))
                (a2 (Believes! alice t1 (Believes! bob t0 (implies (Boiling kettle) (Hot kettle))))))
  :goal (Believes! alice t2 (Believes! bob t1 (Hot kettle)))))"),
      true);
  add("belief-mp-reversed", entry(R"((define-problem belief-mp-reversed
  :declarations ((agent alice) (object grass))
  :assumptions ((a1 (Believes! alice t2 (Wet grass)))
                (a2 (Believes! alice t2 (implies (Wet grass) (Slippery grass)))))
  :goal (Believes! alice t1 (Slippery grass))))"),
      false);
  add("belief-conj", entry(R"((define-problem belief-conj
  :declarations ((agent alice) (object bread cheese))
  :assumptions ((a1 (Believes! alice t1 (Fresh bread)))
                (a2 (Believes! alice t1 (Fresh cheese))))
  :goal (Believes! alice t2 (and (Fresh bread) (Fresh cheese)))))"),
      true);
  add("belief-universal-instance", entry(R"((define-problem belief-universal-instance
  :declarations ((agent alice) (object spoon))
  :assumptions ((a1 (Believes! alice t1 (forall x (implies (Metal x) (Conducts x)))))
                (a2 (Believes! alice t1 (Metal spoon))))
  :goal (Believes! alice t2 (Conducts spoon))))"),
      true);
  add("believes-time-order", entry(R"((define-problem believes-time-order
  :declarations ((agent alice))
  :assumptions ()
  :goal (Believes! alice t2 (< t0 t1))))"),
      true);

  // Perception promotions.
  add("perceive-promote", entry(R"((define-problem perceive-promote
  :declarations ((agent watcher))
  :assumptions ((a1 (Perceives! watcher t1 (Smoke))))
  :goal (Believes! watcher t2 (Smoke))))"),
      true);
  add("perceive-same-time", entry(R"((define-problem perceive-same-time
  :declarations ((agent watcher))
  :assumptions ((a1 (Perceives! watcher t1 (Smoke))))
  :goal (Believes! watcher t1 (Smoke))))"),
      false);
  add("perceive-past", entry(R"((define-problem perceive-past
  :declarations ((agent watcher))
  :assumptions ((a1 (Perceives! watcher t1 (Smoke))))
  :goal (Believes! watcher t0 (Smoke))))"),
      false);

  return out;
}

}  // namespace mucalc
