#include "mucalc/clause.hpp"

#include <algorithm>
#include <map>

namespace mucalc {
namespace {

std::string render_atom(const Literal& l) {
  std::string out = "(" + l.predicate;
  for (const auto& a : l.args) out += " " + a.render();
  out += ")";
  return out;
}

void blind_render(const Term& t, std::string& out) {
  if (t.kind == Term::Kind::Variable) {
    out += "*";
    return;
  }
  if (t.args.empty()) {
    out += t.symbol;
    return;
  }
  out += "(" + t.symbol;
  for (const auto& a : t.args) {
    out += " ";
    blind_render(a, out);
  }
  out += ")";
}

void pattern_render(const Term& t, std::string& out, std::map<std::string, int>& slots) {
  if (t.kind == Term::Kind::Variable) {
    const std::string key = t.symbol + "\x1f" + std::string(sort_name(t.sort));
    auto [it, inserted] = slots.emplace(key, static_cast<int>(slots.size()));
    out += "*" + std::to_string(it->second);
    (void)inserted;
    return;
  }
  if (t.args.empty()) {
    out += t.symbol;
    return;
  }
  out += "(" + t.symbol;
  for (const auto& a : t.args) {
    out += " ";
    pattern_render(a, out, slots);
  }
  out += ")";
}

// Sort key: sign and predicate first, then the literal with variables
// blanked, then with variables numbered by first local occurrence.
std::pair<std::string, std::string> sort_key(const Literal& l) {
  std::string blind = l.positive ? "+" : "-";
  blind += l.predicate;
  for (const auto& a : l.args) {
    blind += " ";
    blind_render(a, blind);
  }
  std::string pattern;
  std::map<std::string, int> slots;
  for (const auto& a : l.args) {
    pattern += " ";
    pattern_render(a, pattern, slots);
  }
  return {std::move(blind), std::move(pattern)};
}

void collect_vars(const Term& t, std::vector<Term>& out) {
  if (t.kind == Term::Kind::Variable) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return;
  }
  for (const auto& a : t.args) collect_vars(a, out);
}

Term rename_term(const Term& t, const std::map<std::string, Term>& names) {
  if (t.kind == Term::Kind::Variable) {
    auto it = names.find(t.symbol + "\x1f" + std::string(sort_name(t.sort)));
    return it == names.end() ? t : it->second;
  }
  if (t.args.empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(rename_term(a, names));
  return Term::application(t.symbol, std::move(args), t.sort);
}

}  // namespace

std::string Literal::render() const {
  return positive ? render_atom(*this) : "(not " + render_atom(*this) + ")";
}

std::string Clause::render() const {
  if (literals.empty()) return "[]";
  std::string out;
  for (std::size_t i = 0; i < literals.size(); ++i) {
    if (i) out += " | ";
    out += literals[i].render();
  }
  return out;
}

bool tautology(const Clause& c) {
  for (std::size_t i = 0; i < c.literals.size(); ++i)
    for (std::size_t j = i + 1; j < c.literals.size(); ++j)
      if (c.literals[i].positive != c.literals[j].positive &&
          c.literals[i].same_atom(c.literals[j]))
        return true;
  return false;
}

std::vector<Term> clause_variables(const Clause& c) {
  std::vector<Term> vars;
  for (const auto& l : c.literals)
    for (const auto& a : l.args) collect_vars(a, vars);
  return vars;
}

Clause canonical(const Clause& c) {
  std::vector<std::pair<std::pair<std::string, std::string>, Literal>> keyed;
  keyed.reserve(c.literals.size());
  for (const auto& l : c.literals) keyed.emplace_back(sort_key(l), l);
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  Clause sorted;
  for (auto& [key, lit] : keyed) {
    (void)key;
    sorted.literals.push_back(std::move(lit));
  }

  std::map<std::string, Term> names;
  for (const auto& v : clause_variables(sorted)) {
    const std::string fresh = "v" + std::to_string(names.size());
    names.emplace(v.symbol + "\x1f" + std::string(sort_name(v.sort)), Term::variable(fresh, v.sort));
  }

  Clause out;
  for (const auto& l : sorted.literals) {
    std::vector<Term> args;
    args.reserve(l.args.size());
    for (const auto& a : l.args) args.push_back(rename_term(a, names));
    Literal renamed(l.positive, l.predicate, std::move(args));
    if (std::find(out.literals.begin(), out.literals.end(), renamed) == out.literals.end())
      out.literals.push_back(std::move(renamed));
  }
  return out;
}

}  // namespace mucalc
