#include "mucalc/shadow.hpp"

#include <stdexcept>

namespace mucalc {
namespace {

// Renders a modal subformula with leaves abstracted to sorted holes and
// bound variables as binder-distance indices, collecting the leaf list.
class SkeletonBuilder {
 public:
  std::string build(const Formula::Ptr& f) { return formula(f); }
  const std::vector<Term>& leaves() const { return leaves_; }

 private:
  std::string hole(const Term& t) {
    const std::string key = t.render() + "\x1f" + std::string(sort_name(t.sort));
    auto [it, inserted] = index_.emplace(key, leaves_.size());
    if (inserted) leaves_.push_back(t);
    return "#" + std::to_string(it->second) + ":" + std::string(sort_name(t.sort));
  }

  std::string term(const Term& t) {
    if (t.is_variable()) {
      for (std::size_t i = bound_.size(); i-- > 0;)
        if (bound_[i] == t) return "!" + std::to_string(bound_.size() - 1 - i);
      return hole(t);
    }
    if (t.is_ground()) return hole(t);
    std::string out = "(" + t.symbol;
    for (const auto& a : t.args) out += " " + term(a);
    return out + ")";
  }

  std::string formula(const Formula::Ptr& f) {
    switch (f->kind()) {
      case Formula::Kind::Atom: {
        std::string out = "(" + f->predicate();
        for (const auto& a : f->args()) out += " " + term(a);
        return out + ")";
      }
      case Formula::Kind::Not:
        return "(not " + formula(f->lhs()) + ")";
      case Formula::Kind::And:
        return "(and " + formula(f->lhs()) + " " + formula(f->rhs()) + ")";
      case Formula::Kind::Or:
        return "(or " + formula(f->lhs()) + " " + formula(f->rhs()) + ")";
      case Formula::Kind::Implies:
        return "(implies " + formula(f->lhs()) + " " + formula(f->rhs()) + ")";
      case Formula::Kind::Iff:
        return "(iff " + formula(f->lhs()) + " " + formula(f->rhs()) + ")";
      case Formula::Kind::Forall: {
        bound_.push_back(f->bound_var());
        std::string body = formula(f->body());
        bound_.pop_back();
        return "(forall " + std::string(sort_name(f->bound_var().sort)) + " " + body + ")";
      }
      case Formula::Kind::Believes:
      case Formula::Kind::Perceives: {
        const char* head = f->kind() == Formula::Kind::Believes ? "Believes!" : "Perceives!";
        std::string agent = term(f->agent());
        std::string time = term(f->time());
        return "(" + std::string(head) + " " + agent + " " + time + " " + formula(f->body()) +
               ")";
      }
    }
    throw std::logic_error("skeleton: unreachable");
  }

  std::vector<Term> leaves_;
  std::map<std::string, std::size_t> index_;
  std::vector<Term> bound_;
};

}  // namespace

ShadowMap::ShadowMap(std::set<std::string> taken) : taken_(std::move(taken)) {}

const ShadowEntry& ShadowMap::intern(const std::string& skeleton,
                                     const std::vector<Sort>& arg_sorts) {
  auto it = by_skeleton_.find(skeleton);
  if (it != by_skeleton_.end()) {
    const ShadowEntry& entry = order_[it->second];
    if (entry.arg_sorts != arg_sorts)
      throw std::logic_error("shadow: one skeleton with two argument signatures");
    return entry;
  }
  std::string name;
  do {
    name = "Sh" + std::to_string(++next_);
  } while (taken_.count(name));
  taken_.insert(name);
  by_skeleton_.emplace(skeleton, order_.size());
  order_.push_back(ShadowEntry{std::move(name), arg_sorts, skeleton});
  return order_.back();
}

Formula::Ptr shadow(const Formula::Ptr& f, ShadowMap& map) {
  if (!f) throw std::invalid_argument("shadow: null formula");
  switch (f->kind()) {
    case Formula::Kind::Believes:
    case Formula::Kind::Perceives: {
      SkeletonBuilder builder;
      const std::string skeleton = builder.build(f);
      std::vector<Sort> sorts;
      sorts.reserve(builder.leaves().size());
      for (const auto& leaf : builder.leaves()) sorts.push_back(leaf.sort);
      const ShadowEntry& entry = map.intern(skeleton, sorts);
      return Formula::atom(entry.predicate, builder.leaves());
    }
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Not:
      return Formula::negation(shadow(f->lhs(), map));
    case Formula::Kind::And:
      return Formula::conj(shadow(f->lhs(), map), shadow(f->rhs(), map));
    case Formula::Kind::Or:
      return Formula::disj(shadow(f->lhs(), map), shadow(f->rhs(), map));
    case Formula::Kind::Implies:
      return Formula::implies(shadow(f->lhs(), map), shadow(f->rhs(), map));
    case Formula::Kind::Iff:
      return Formula::iff(shadow(f->lhs(), map), shadow(f->rhs(), map));
    case Formula::Kind::Forall:
      return Formula::forall(f->bound_var(), shadow(f->body(), map));
  }
  throw std::logic_error("shadow: unreachable");
}

}  // namespace mucalc
