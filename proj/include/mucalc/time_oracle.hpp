#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mucalc/formula.hpp"

namespace mucalc {

enum class Truth : std::uint8_t { True, False, Unknown };

// Ground ordering fact between two time terms.
struct TimeFact {
  enum class Rel : std::uint8_t { Less, Distinct, Equal };
  Rel rel = Rel::Less;
  Term left;
  Term right;

  static TimeFact less(Term a, Term b) { return {Rel::Less, std::move(a), std::move(b)}; }
  static TimeFact distinct(Term a, Term b) { return {Rel::Distinct, std::move(a), std::move(b)}; }
  static TimeFact equal(Term a, Term b) { return {Rel::Equal, std::move(a), std::move(b)}; }

  bool operator==(const TimeFact& o) const {
    return rel == o.rel && left == o.left && right == o.right;
  }

  std::string render() const;
};

// Decision procedure for ground time-order queries. Indexed constants
// t0, t1, ... are totally ordered by index and pairwise distinct; other
// constants are ordered only through asserted facts (transitive closure).
//
// add_fact rejects anything that would break the strict partial order
// (cycles, equating ordered or indexed-distinct times) and leaves the
// oracle unchanged in that case.
class TimeOracle {
 public:
  TimeOracle() = default;
  explicit TimeOracle(const std::vector<TimeFact>& facts);

  void add_fact(const TimeFact& fact);
  void note_constant(const Term& t);

  Truth less(const Term& a, const Term& b) const;
  Truth distinct(const Term& a, const Term& b) const;
  Truth equal_times(const Term& a, const Term& b) const;

  // Every time constant the oracle has seen, in deterministic order.
  std::vector<Term> constants() const;

  // Ground unit formulae expressing every decided relation between the
  // known constants; injected as common knowledge into first-order calls.
  std::vector<Formula::Ptr> theory() const;

  const std::vector<TimeFact>& facts() const { return facts_; }

 private:
  void check_time_ground(const Term& t) const;
  std::string rep(const std::string& key) const;
  bool path(const std::string& from, const std::string& to) const;
  void validate() const;

  std::vector<TimeFact> facts_;
  std::map<std::string, Term> known_;              // key -> term
  mutable std::map<std::string, std::string> parent_;  // union-find over keys
  std::set<std::pair<std::string, std::string>> edges_;     // asserted <
  std::set<std::pair<std::string, std::string>> unequal_;   // asserted !=
};

// Convenience form matching the one-shot query shape.
Truth time_less(const Term& a, const Term& b, const std::vector<TimeFact>& facts);

// Collects ground time-order facts asserted at the top level of a formula
// (conjunctions are traversed): (< a b), (= a b), (not (= a b)).
void extract_time_facts(const Formula::Ptr& f, std::vector<TimeFact>& out);

}  // namespace mucalc
