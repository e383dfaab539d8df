#include "mucalc/time_oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>

namespace mucalc {
namespace {

std::string key_of(const Term& t) { return t.render(); }

std::pair<std::string, std::string> ordered(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

}  // namespace

std::string TimeFact::render() const {
  const char* op = rel == Rel::Less ? "<" : rel == Rel::Equal ? "=" : "!=";
  return "(" + std::string(op) + " " + left.render() + " " + right.render() + ")";
}

TimeOracle::TimeOracle(const std::vector<TimeFact>& facts) {
  for (const auto& f : facts) add_fact(f);
}

void TimeOracle::check_time_ground(const Term& t) const {
  if (t.sort != Sort::Time)
    throw std::invalid_argument("time oracle: term is not time-sorted: " + t.render());
  if (!t.is_ground())
    throw std::invalid_argument("time oracle: term is not ground: " + t.render());
}

std::string TimeOracle::rep(const std::string& key) const {
  auto it = parent_.find(key);
  if (it == parent_.end()) {
    parent_[key] = key;
    return key;
  }
  std::string root = key;
  while (parent_[root] != root) root = parent_[root];
  // Path compression.
  std::string walk = key;
  while (parent_[walk] != root) {
    std::string next = parent_[walk];
    parent_[walk] = root;
    walk = next;
  }
  return root;
}

void TimeOracle::note_constant(const Term& t) {
  check_time_ground(t);
  known_.emplace(key_of(t), t);
  rep(key_of(t));
}

namespace {

// Index carried by an equivalence class, if any member is an indexed literal.
std::optional<long> class_index(const std::map<std::string, Term>& known,
                                const std::function<std::string(const std::string&)>& rep,
                                const std::string& cls) {
  for (const auto& [key, term] : known) {
    if (rep(key) != cls) continue;
    if (auto idx = time_index(term)) return idx;
  }
  return std::nullopt;
}

}  // namespace

bool TimeOracle::path(const std::string& from, const std::string& to) const {
  auto rep_fn = [this](const std::string& k) { return rep(k); };
  std::deque<std::string> queue{from};
  std::set<std::string> seen{from};
  while (!queue.empty()) {
    std::string node = queue.front();
    queue.pop_front();
    std::vector<std::string> next;
    for (const auto& [x, y] : edges_)
      if (rep(x) == node) next.push_back(rep(y));
    if (auto i = class_index(known_, rep_fn, node)) {
      for (const auto& [key, term] : known_) {
        auto j = time_index(term);
        if (j && *j > *i) next.push_back(rep(key));
      }
    }
    for (auto& n : next) {
      if (n == to) return true;
      if (seen.insert(n).second) queue.push_back(n);
    }
  }
  return false;
}

Truth TimeOracle::less(const Term& a, const Term& b) const {
  check_time_ground(a);
  check_time_ground(b);
  auto rep_fn = [this](const std::string& k) { return rep(k); };
  const std::string ra = rep(key_of(a));
  const std::string rb = rep(key_of(b));
  if (ra == rb) return Truth::False;
  auto ia = class_index(known_, rep_fn, ra);
  auto ib = class_index(known_, rep_fn, rb);
  if (!ia) ia = time_index(a);
  if (!ib) ib = time_index(b);
  if (ia && ib) return *ia < *ib ? Truth::True : Truth::False;
  if (path(ra, rb)) return Truth::True;
  if (path(rb, ra)) return Truth::False;
  return Truth::Unknown;
}

Truth TimeOracle::distinct(const Term& a, const Term& b) const {
  check_time_ground(a);
  check_time_ground(b);
  const std::string ra = rep(key_of(a));
  const std::string rb = rep(key_of(b));
  if (ra == rb) return Truth::False;
  const auto lt = less(a, b);
  const auto gt = less(b, a);
  if (lt == Truth::True || gt == Truth::True) return Truth::True;
  for (const auto& [x, y] : unequal_)
    if (ordered(rep(x), rep(y)) == ordered(ra, rb)) return Truth::True;
  return Truth::Unknown;
}

Truth TimeOracle::equal_times(const Term& a, const Term& b) const {
  check_time_ground(a);
  check_time_ground(b);
  if (rep(key_of(a)) == rep(key_of(b))) return Truth::True;
  const auto d = distinct(a, b);
  if (d == Truth::True) return Truth::False;
  return Truth::Unknown;
}

std::vector<Term> TimeOracle::constants() const {
  std::vector<Term> out;
  for (const auto& [key, term] : known_) {
    (void)key;
    out.push_back(term);
  }
  return out;
}

void TimeOracle::validate() const {
  auto rep_fn = [this](const std::string& k) { return rep(k); };
  // No two distinct indexed literals may share an equivalence class, and
  // asserted inequalities must not be collapsed.
  std::map<std::string, long> index_of_class;
  for (const auto& [key, term] : known_) {
    auto idx = time_index(term);
    if (!idx) continue;
    const std::string cls = rep(key);
    auto [it, inserted] = index_of_class.emplace(cls, *idx);
    if (!inserted && it->second != *idx)
      throw std::invalid_argument("inconsistent time facts: " + key + " forced equal to t" +
                                  std::to_string(it->second));
  }
  for (const auto& [x, y] : unequal_)
    if (rep(x) == rep(y))
      throw std::invalid_argument("inconsistent time facts: " + x + " both equal and unequal to " +
                                  y);
  // The strict order must stay acyclic: walk the combined graph of asserted
  // edges and index edges.
  std::set<std::string> nodes;
  for (const auto& [key, term] : known_) {
    (void)term;
    nodes.insert(rep(key));
  }
  for (const auto& [x, y] : edges_) {
    nodes.insert(rep(x));
    nodes.insert(rep(y));
  }
  auto neighbors = [&](const std::string& n) {
    std::vector<std::string> next;
    for (const auto& [x, y] : edges_)
      if (rep(x) == n) next.push_back(rep(y));
    if (auto i = class_index(known_, rep_fn, n)) {
      for (const auto& [key, term] : known_) {
        auto j = time_index(term);
        if (j && *j > *i) next.push_back(rep(key));
      }
    }
    return next;
  };
  for (const auto& start : nodes) {
    // A cycle exists iff some node reaches itself.
    std::deque<std::string> queue{start};
    std::set<std::string> seen;
    while (!queue.empty()) {
      std::string node = queue.front();
      queue.pop_front();
      for (const auto& n : neighbors(node)) {
        if (n == start)
          throw std::invalid_argument("inconsistent time facts: ordering cycle through " + start);
        if (seen.insert(n).second) queue.push_back(n);
      }
    }
  }
}

void TimeOracle::add_fact(const TimeFact& fact) {
  check_time_ground(fact.left);
  check_time_ground(fact.right);
  auto facts = facts_;
  auto known = known_;
  auto parent = parent_;
  auto edges = edges_;
  auto unequal = unequal_;
  try {
    note_constant(fact.left);
    note_constant(fact.right);
    const std::string ka = key_of(fact.left);
    const std::string kb = key_of(fact.right);
    switch (fact.rel) {
      case TimeFact::Rel::Less:
        edges_.insert({ka, kb});
        break;
      case TimeFact::Rel::Equal:
        parent_[rep(ka)] = rep(kb);
        break;
      case TimeFact::Rel::Distinct:
        unequal_.insert(ordered(ka, kb));
        break;
    }
    facts_.push_back(fact);
    validate();
  } catch (...) {
    facts_ = std::move(facts);
    known_ = std::move(known);
    parent_ = std::move(parent);
    edges_ = std::move(edges);
    unequal_ = std::move(unequal);
    throw;
  }
}

std::vector<Formula::Ptr> TimeOracle::theory() const {
  std::vector<Formula::Ptr> out;
  const auto cs = constants();
  auto lt = [](const Term& a, const Term& b) { return Formula::atom("<", {a, b}); };
  auto eq = [](const Term& a, const Term& b) { return Formula::atom("=", {a, b}); };
  for (const auto& c : cs) {
    out.push_back(Formula::negation(lt(c, c)));
    out.push_back(eq(c, c));
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      const Term& a = cs[i];
      const Term& b = cs[j];
      if (less(a, b) == Truth::True) {
        out.push_back(lt(a, b));
        out.push_back(Formula::negation(lt(b, a)));
        out.push_back(Formula::negation(eq(a, b)));
        out.push_back(Formula::negation(eq(b, a)));
      } else if (less(b, a) == Truth::True) {
        out.push_back(lt(b, a));
        out.push_back(Formula::negation(lt(a, b)));
        out.push_back(Formula::negation(eq(a, b)));
        out.push_back(Formula::negation(eq(b, a)));
      } else if (equal_times(a, b) == Truth::True) {
        out.push_back(eq(a, b));
        out.push_back(eq(b, a));
        out.push_back(Formula::negation(lt(a, b)));
        out.push_back(Formula::negation(lt(b, a)));
      } else if (distinct(a, b) == Truth::True) {
        out.push_back(Formula::negation(eq(a, b)));
        out.push_back(Formula::negation(eq(b, a)));
      }
    }
  }
  return out;
}

Truth time_less(const Term& a, const Term& b, const std::vector<TimeFact>& facts) {
  TimeOracle oracle(facts);
  oracle.note_constant(a);
  oracle.note_constant(b);
  return oracle.less(a, b);
}

void extract_time_facts(const Formula::Ptr& f, std::vector<TimeFact>& out) {
  if (!f) return;
  auto ground_time_pair = [](const Formula::Ptr& g) -> std::optional<std::pair<Term, Term>> {
    if (g->kind() != Formula::Kind::Atom || g->args().size() != 2) return std::nullopt;
    const Term& a = g->args()[0];
    const Term& b = g->args()[1];
    if (a.sort != Sort::Time || b.sort != Sort::Time) return std::nullopt;
    if (!a.is_ground() || !b.is_ground()) return std::nullopt;
    return std::make_pair(a, b);
  };
  switch (f->kind()) {
    case Formula::Kind::And:
      extract_time_facts(f->lhs(), out);
      extract_time_facts(f->rhs(), out);
      return;
    case Formula::Kind::Atom: {
      auto p = ground_time_pair(f);
      if (!p) return;
      if (f->predicate() == "<") out.push_back(TimeFact::less(p->first, p->second));
      if (f->predicate() == "=") out.push_back(TimeFact::equal(p->first, p->second));
      return;
    }
    case Formula::Kind::Not: {
      const Formula::Ptr& inner = f->lhs();
      if (!inner || inner->kind() != Formula::Kind::Atom) return;
      auto p = ground_time_pair(inner);
      if (!p) return;
      if (inner->predicate() == "=") out.push_back(TimeFact::distinct(p->first, p->second));
      return;
    }
    default:
      return;
  }
}

}  // namespace mucalc
