#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mucalc/problem.hpp"

namespace mucalc {

// Parameters of the teleportation-identity simulation: a system observing
// a student whose agent hops between two embodiments, connected by shared
// beliefs about one personal object's property.
//
// Times must be indexed literals so their order is decidable without
// extra facts: base_time < time_a < time_b < goal_time. The base time is
// when the personal-object fact and the identity criterion are believed.
struct TeleportScenario {
  std::string system = "system";
  std::string student = "student";
  std::pair<std::string, std::string> embodiments = {"emb-a", "emb-b"};
  std::string personal_object = "watch";
  std::string property = "stopped";
  std::string base_time = "t0";
  std::string time_a = "t1";
  std::string time_b = "t2";
  std::string goal_time = "t3";
};

// The identity criterion (assumption A4): the system believes the student
// believes that two agents believing a personal object to have the same
// property at different times are the same agent. Exactly six universal
// binders.
Formula::Ptr identity_criterion(const TeleportScenario& s = {});

// The four-assumption problem:
//   a1  system believes (at time_a) the student believes embodiment A
//       believes the object has the property;
//   a2  the same at time_b with embodiment B;
//   a3  system believes (at base) the student believes the object is
//       a personal object;
//   a4  the identity criterion;
// goal: system believes (at goal_time) the student believes the two
// embodiments are the same. Throws std::invalid_argument on invariant
// violations.
Problem build_teleport_scenario(const TeleportScenario& s = {});

// Variant exercising the perception rule: a1/a2 perceive their outer
// layer instead of believing it. Needs goal_time at least two steps
// after time_b so a strictly intermediate declared time exists for the
// promotion; every time literal between base and goal is declared.
Problem build_teleport_scenario_perception(const TeleportScenario& s);

// Copy without one labelled assumption (negative controls). Throws
// std::invalid_argument when the label is absent.
Problem without_assumption(const Problem& p, const std::string& label);

struct CorpusEntry {
  std::string name;
  Problem problem;
  bool expect_proved = false;
};

// The regression corpus: the flagship scenario with its negative
// controls and variants, pure first-order exercises, belief-closure
// chains, perception promotions, and no-modal-collapse non-theorems.
std::vector<CorpusEntry> corpus();

}  // namespace mucalc
