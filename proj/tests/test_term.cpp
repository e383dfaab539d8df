#include <doctest.h>

#include "mucalc/term.hpp"

using namespace mucalc;

TEST_CASE("sort names round-trip") {
  for (Sort s : {Sort::Agent, Sort::Time, Sort::Object, Sort::Fluent}) {
    auto back = sort_from_name(sort_name(s));
    REQUIRE(back.has_value());
    CHECK(*back == s);
  }
  CHECK_FALSE(sort_from_name("widget").has_value());
}

TEST_CASE("term construction and equality") {
  Term x = Term::variable("x", Sort::Agent);
  Term c = Term::constant("alice", Sort::Agent);
  CHECK(x.is_variable());
  CHECK(c.is_constant());
  CHECK(c.is_ground());
  CHECK_FALSE(x.is_ground());
  CHECK(x != c);
  CHECK(x == Term::variable("x", Sort::Agent));
  // Same name, different sort: distinct terms.
  CHECK(Term::variable("x", Sort::Agent) != Term::variable("x", Sort::Time));
}

TEST_CASE("applications render with their arguments") {
  Term f = Term::application("succ", {Term::constant("t1", Sort::Time)}, Sort::Time);
  CHECK(f.render() == "(succ t1)");
  CHECK(f.is_ground());
  Term g = Term::application("succ", {Term::variable("u", Sort::Time)}, Sort::Time);
  CHECK_FALSE(g.is_ground());
}

TEST_CASE("compare gives a total order usable for sorting") {
  Term a = Term::constant("a", Sort::Agent);
  Term b = Term::constant("b", Sort::Agent);
  CHECK(compare(a, a) == 0);
  CHECK(compare(a, b) != 0);
  CHECK((compare(a, b) < 0) == (compare(b, a) > 0));
}

TEST_CASE("time literals carry their index in the name") {
  CHECK(time_index(Term::constant("t0", Sort::Time)) == 0);
  CHECK(time_index(Term::constant("t42", Sort::Time)) == 42);
  CHECK_FALSE(time_index(Term::constant("now", Sort::Time)).has_value());
  CHECK_FALSE(time_index(Term::variable("t", Sort::Time)).has_value());
  // A t<digits> name of a non-time sort is not a time literal term.
  CHECK_FALSE(time_index(Term::constant("t1", Sort::Object)).has_value());

  CHECK(is_time_literal("t7"));
  CHECK(is_time_literal("t999"));
  CHECK_FALSE(is_time_literal("t"));
  CHECK_FALSE(is_time_literal("t1a"));
  CHECK_FALSE(is_time_literal("x1"));
}
