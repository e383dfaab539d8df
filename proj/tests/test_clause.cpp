#include <doctest.h>

#include "mucalc/clause.hpp"

using namespace mucalc;

namespace {
Term ov(const char* n) { return Term::variable(n, Sort::Object); }
Term oc(const char* n) { return Term::constant(n, Sort::Object); }
}  // namespace

TEST_CASE("literal and clause rendering") {
  Literal p(true, "P", {oc("a")});
  CHECK(p.render() == "(P a)");
  CHECK(p.negated().render() == "(not (P a))");
  CHECK(Clause{}.render() == "[]");
  CHECK(Clause({p, p.negated()}).render() == "(P a) | (not (P a))");
}

TEST_CASE("tautology detection") {
  Literal p(true, "P", {oc("a")});
  Literal q(true, "Q", {});
  CHECK(tautology(Clause({p, p.negated()})));
  CHECK_FALSE(tautology(Clause({p, q})));
  // Same predicate, different args: not a tautology.
  Literal p2(false, "P", {oc("b")});
  CHECK_FALSE(tautology(Clause({p, p2})));
}

TEST_CASE("canonical renames variables by first occurrence") {
  Clause c({Literal(true, "P", {ov("x"), ov("y")})});
  Clause d({Literal(true, "P", {ov("left"), ov("right")})});
  CHECK(canonical(c).render() == canonical(d).render());
  CHECK(canonical(c).render() == "(P v0 v1)");
}

TEST_CASE("canonical drops duplicate literals") {
  Literal p(true, "P", {ov("x")});
  Literal q(true, "P", {ov("x")});
  Clause c({p, q});
  CHECK(canonical(c).literals.size() == 1);
}

TEST_CASE("canonical is stable under literal reordering") {
  Literal a(true, "P", {ov("x")});
  Literal b(false, "Q", {ov("x"), oc("c")});
  Literal d(true, "R", {});
  Clause c1({a, b, d});
  Clause c2({d, a, b});
  Clause c3({b, d, a});
  CHECK(canonical(c1).render() == canonical(c2).render());
  CHECK(canonical(c2).render() == canonical(c3).render());
}

TEST_CASE("canonical is idempotent") {
  Clause c({Literal(false, "Edge", {ov("b"), ov("a")}),
            Literal(true, "Edge", {ov("a"), ov("b")}),
            Literal(true, "Node", {ov("a")})});
  Clause once = canonical(c);
  Clause twice = canonical(once);
  CHECK(once == twice);
  CHECK(once.render() == twice.render());
}

TEST_CASE("clause_variables lists variables in first-occurrence order") {
  Clause c({Literal(true, "P", {ov("x"), ov("y")}),
            Literal(true, "Q", {ov("x"), ov("z")})});
  auto vars = clause_variables(c);
  REQUIRE(vars.size() == 3);
  CHECK(vars[0] == ov("x"));
  CHECK(vars[1] == ov("y"));
  CHECK(vars[2] == ov("z"));
}
