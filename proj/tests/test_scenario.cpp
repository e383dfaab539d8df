#include <doctest.h>

#include <algorithm>
#include <set>

#include "mucalc/scenario.hpp"

using namespace mucalc;

namespace {

// Peels the universal prefix of a formula, collecting binders in order.
Formula::Ptr peel_foralls(Formula::Ptr f, std::vector<Term>& binders) {
  while (f->kind() == Formula::Kind::Forall) {
    binders.push_back(f->bound_var());
    f = f->body();
  }
  return f;
}

const CorpusEntry* find_entry(const std::vector<CorpusEntry>& entries,
                              const std::string& name) {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace

TEST_CASE("scenario validation rejects malformed parameters") {
  TeleportScenario s;

  SUBCASE("non-indexed time literal") {
    s.base_time = "dawn";
    CHECK_THROWS_AS(build_teleport_scenario(s), std::invalid_argument);
  }
  SUBCASE("times out of order") {
    s.time_a = "t2";
    s.time_b = "t1";
    CHECK_THROWS_AS(build_teleport_scenario(s), std::invalid_argument);
  }
  SUBCASE("times not strictly increasing") {
    s.time_b = s.time_a;
    CHECK_THROWS_AS(build_teleport_scenario(s), std::invalid_argument);
  }
  SUBCASE("identical embodiments") {
    s.embodiments = {"emb", "emb"};
    CHECK_THROWS_AS(build_teleport_scenario(s), std::invalid_argument);
  }
  SUBCASE("symbol with whitespace") {
    s.personal_object = "pocket watch";
    CHECK_THROWS_AS(build_teleport_scenario(s), std::invalid_argument);
  }
  SUBCASE("symbol with parenthesis") {
    s.property = "odd(";
    CHECK_THROWS_AS(build_teleport_scenario(s), std::invalid_argument);
  }
  SUBCASE("empty symbol") {
    s.system = "";
    CHECK_THROWS_AS(build_teleport_scenario(s), std::invalid_argument);
  }
}

TEST_CASE("the perception variant needs room for a promotion time") {
  TeleportScenario s;  // t0 < t1 < t2 < t3
  CHECK_THROWS_AS(build_teleport_scenario_perception(s), std::invalid_argument);
  s.goal_time = "t4";
  const Problem p = build_teleport_scenario_perception(s);
  CHECK(p.assumptions.size() == 4);
  CHECK(p.assumptions[0].second->kind() == Formula::Kind::Perceives);
  CHECK(p.assumptions[1].second->kind() == Formula::Kind::Perceives);
  // The whole base..goal range is declared so the promotion has a
  // strictly intermediate landing time.
  for (const char* t : {"t0", "t1", "t2", "t3", "t4"}) {
    auto it = p.declarations.find(t);
    REQUIRE_MESSAGE(it != p.declarations.end(), t);
    CHECK(it->second == Sort::Time);
  }
}

TEST_CASE("identity criterion carries exactly six universal binders") {
  const Formula::Ptr a4 = identity_criterion();
  REQUIRE(a4->kind() == Formula::Kind::Believes);
  CHECK(a4->agent() == Term::constant("system", Sort::Agent));
  CHECK(a4->time() == Term::constant("t0", Sort::Time));
  REQUIRE(a4->body()->kind() == Formula::Kind::Believes);
  CHECK(a4->body()->agent() == Term::constant("student", Sort::Agent));

  std::vector<Term> binders;
  const Formula::Ptr matrix = peel_foralls(a4->body()->body(), binders);
  REQUIRE(binders.size() == 6);
  const std::vector<Sort> expected_sorts = {Sort::Agent, Sort::Agent, Sort::Object,
                                            Sort::Fluent, Sort::Time, Sort::Time};
  for (std::size_t i = 0; i < 6; ++i) CHECK(binders[i].sort == expected_sorts[i]);
  CHECK(matrix->kind() == Formula::Kind::Implies);
}

TEST_CASE("instantiating the criterion matches the scenario's inner beliefs") {
  const TeleportScenario s;
  const Problem problem = build_teleport_scenario(s);
  const Formula::Ptr a4 = *problem.assumption("a4");

  std::vector<Term> binders;
  const Formula::Ptr matrix = peel_foralls(a4->body()->body(), binders);
  REQUIRE(binders.size() == 6);

  const std::vector<Term> values = {
      Term::constant("emb-a", Sort::Agent), Term::constant("emb-b", Sort::Agent),
      Term::constant("watch", Sort::Object), Term::constant("stopped", Sort::Fluent),
      Term::constant("t1", Sort::Time),      Term::constant("t2", Sort::Time)};
  Binding binding;
  for (std::size_t i = 0; i < 6; ++i) binding.emplace(binders[i], values[i]);
  const Formula::Ptr instance = substitute(matrix, binding);

  // Antecedent: PersonalObject ∧ (belief-A ∧ (belief-B ∧ distinct-times)).
  REQUIRE(instance->kind() == Formula::Kind::Implies);
  const Formula::Ptr ante = instance->lhs();
  REQUIRE(ante->kind() == Formula::Kind::And);
  const Formula::Ptr believes_a = ante->rhs()->lhs();
  const Formula::Ptr believes_b = ante->rhs()->rhs()->lhs();

  // a3's inner content is the PersonalObject fact.
  const Formula::Ptr a3 = *problem.assumption("a3");
  CHECK(equal(ante->lhs(), a3->body()->body()));
  // a1/a2's innermost layers are the instantiated belief atoms.
  const Formula::Ptr a1 = *problem.assumption("a1");
  const Formula::Ptr a2 = *problem.assumption("a2");
  CHECK(equal(believes_a, a1->body()->body()));
  CHECK(equal(believes_b, a2->body()->body()));
  // Consequent is the goal's inner content.
  CHECK(equal(instance->rhs(), problem.goal->body()->body()));
}

TEST_CASE("the default build is deterministic and fully declared") {
  const Problem a = build_teleport_scenario();
  const Problem b = build_teleport_scenario();
  CHECK(equal(a, b));

  CHECK(a.name == "teleport");
  REQUIRE(a.assumptions.size() == 4);
  const std::vector<std::string> labels = {"a1", "a2", "a3", "a4"};
  for (std::size_t i = 0; i < 4; ++i) CHECK(a.assumptions[i].first == labels[i]);

  const std::vector<std::pair<std::string, Sort>> expected = {
      {"system", Sort::Agent}, {"student", Sort::Agent}, {"emb-a", Sort::Agent},
      {"emb-b", Sort::Agent},  {"watch", Sort::Object},  {"stopped", Sort::Fluent},
      {"t0", Sort::Time},      {"t1", Sort::Time},       {"t2", Sort::Time},
      {"t3", Sort::Time}};
  for (const auto& [name, sort] : expected) {
    auto it = a.declarations.find(name);
    REQUIRE_MESSAGE(it != a.declarations.end(), name);
    CHECK(it->second == sort);
  }
}

TEST_CASE("renaming scenario symbols flows through every formula") {
  TeleportScenario s;
  s.personal_object = "phone";
  s.property = "cracked";
  s.base_time = "t2";
  s.time_a = "t4";
  s.time_b = "t6";
  s.goal_time = "t9";
  const Problem p = build_teleport_scenario(s);
  CHECK(p.declarations.count("phone") == 1);
  CHECK(p.declarations.count("cracked") == 1);
  CHECK(p.declarations.count("watch") == 0);
  CHECK(p.goal->time() == Term::constant("t9", Sort::Time));
  const Formula::Ptr a1 = *p.assumption("a1");
  CHECK(a1->time() == Term::constant("t4", Sort::Time));
  CHECK(equal(a1->body()->body()->body(),
              Formula::atom("HasProp", {Term::constant("phone", Sort::Object),
                                        Term::constant("cracked", Sort::Fluent)})));
}

TEST_CASE("without_assumption removes exactly one labelled assumption") {
  const Problem full = build_teleport_scenario();
  const Problem cut = without_assumption(full, "a2");
  REQUIRE(cut.assumptions.size() == 3);
  CHECK(cut.assumption("a2") == nullptr);
  CHECK(cut.assumption("a1") != nullptr);
  CHECK(cut.assumption("a4") != nullptr);
  CHECK(equal(cut.goal, full.goal));
  CHECK_THROWS_AS(without_assumption(full, "a9"), std::invalid_argument);
}

TEST_CASE("the corpus lists every scenario family with distinct names") {
  const std::vector<CorpusEntry> entries = corpus();
  CHECK(entries.size() >= 20);

  std::set<std::string> names;
  for (const auto& e : entries) {
    CHECK_MESSAGE(names.insert(e.name).second, "duplicate name: " << e.name);
    CHECK(e.problem.name == e.name);
    CHECK(e.problem.goal != nullptr);
  }

  const std::vector<std::pair<std::string, bool>> required = {
      {"teleport-default", true},     {"teleport-no-A1", false},
      {"teleport-no-A2", false},      {"teleport-no-A3", false},
      {"teleport-no-A4", false},      {"teleport-perceive", true},
      {"belief-not-fact", false},     {"fact-not-belief", false},
      {"belief-not-shared", false},   {"fo-socrates", true},
      {"fo-affirm-consequent", false}, {"belief-mp", true},
      {"perceive-promote", true},     {"perceive-same-time", false}};
  for (const auto& [name, proved] : required) {
    const CorpusEntry* e = find_entry(entries, name);
    REQUIRE_MESSAGE(e != nullptr, name);
    CHECK_MESSAGE(e->expect_proved == proved, name);
  }

  const std::size_t positives =
      std::count_if(entries.begin(), entries.end(),
                    [](const CorpusEntry& e) { return e.expect_proved; });
  CHECK(positives >= 8);
  CHECK(entries.size() - positives >= 8);
}

TEST_CASE("negative controls drop one assumption from the flagship") {
  const std::vector<CorpusEntry> entries = corpus();
  const CorpusEntry* full = find_entry(entries, "teleport-default");
  REQUIRE(full != nullptr);
  for (const char* label : {"a1", "a2", "a3", "a4"}) {
    const CorpusEntry* cut = find_entry(entries, std::string("teleport-no-A") + &label[1]);
    REQUIRE_MESSAGE(cut != nullptr, label);
    CHECK(cut->problem.assumptions.size() == 3);
    CHECK(cut->problem.assumption(label) == nullptr);
    CHECK(equal(cut->problem.goal, full->problem.goal));
  }
}
