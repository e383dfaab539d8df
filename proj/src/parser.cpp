#include "mucalc/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

namespace mucalc {

namespace {

// ---------------------------------------------------------------------------
// S-expression reader

struct SExpr {
  enum class Kind { Symbol, List };
  Kind kind = Kind::Symbol;
  std::string text;
  std::vector<SExpr> items;
  int line = 1;
  int col = 1;

  bool is_symbol() const { return kind == Kind::Symbol; }
  bool is_list() const { return kind == Kind::List; }
};

class Reader {
 public:
  explicit Reader(const std::string& input) : input_(input) {}

  SExpr read_one() {
    skip_blank();
    if (at_end()) fail("expected an expression");
    SExpr e = read_expr();
    skip_blank();
    if (!at_end()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

  bool at_end() const { return pos_ >= input_.size(); }
  char peek() const { return input_[pos_]; }

  char advance() {
    char c = input_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_blank() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == ';') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  static bool symbol_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' &&
           c != ';' && c != '"';
  }

  SExpr read_expr() {
    SExpr e;
    e.line = line_;
    e.col = col_;
    char c = peek();
    if (c == '(') {
      advance();
      e.kind = SExpr::Kind::List;
      for (;;) {
        skip_blank();
        if (at_end()) fail("unbalanced parenthesis");
        if (peek() == ')') {
          advance();
          return e;
        }
        e.items.push_back(read_expr());
      }
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') fail("string literals are not part of the problem syntax");
    e.kind = SExpr::Kind::Symbol;
    while (!at_end() && symbol_char(peek())) e.text += advance();
    if (e.text.empty()) fail("expected an expression");
    return e;
  }

  const std::string& input_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Elaboration: surface tree -> sorted Formula

const std::set<std::string>& reserved_heads() {
  static const std::set<std::string> r = {"and",     "or",     "not",       "implies",
                                          "iff",     "forall", "exists",    "Believes!",
                                          "Perceives!", "define-problem"};
  return r;
}

[[noreturn]] void fail_at(const SExpr& e, const std::string& msg) {
  throw ParseError(e.line, e.col, msg);
}

struct BinderScope {
  // Innermost binding wins; vector used as a stack.
  std::vector<Term> stack;

  const Term* lookup(const std::string& name) const {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
      if (it->symbol == name) return &*it;
    return nullptr;
  }
};

class Elaborator {
 public:
  explicit Elaborator(SymbolTable& symbols) : symbols_(symbols) {}

  Formula::Ptr formula(const SExpr& e) {
    BinderScope scope;
    return elaborate_formula(e, scope);
  }

 private:
  SymbolTable& symbols_;

  Formula::Ptr elaborate_formula(const SExpr& e, BinderScope& scope) {
    if (e.is_symbol()) {
      if (!e.text.empty() && e.text[0] == ':')
        fail_at(e, "keyword '" + e.text + "' is not a formula");
      if (reserved_heads().count(e.text))
        fail_at(e, "reserved head '" + e.text + "' cannot stand alone");
      if (e.text == "<" || e.text == "=")
        fail_at(e, "'" + e.text + "' requires two arguments");
      return atom(e, scope);
    }
    if (e.items.empty()) fail_at(e, "empty list is not a formula");
    const SExpr& head = e.items[0];
    if (!head.is_symbol()) fail_at(head, "formula head must be a symbol");
    const std::string& h = head.text;

    if (h == "not") {
      need_arity(e, 2, h);
      return Formula::negation(elaborate_formula(e.items[1], scope));
    }
    if (h == "and" || h == "or" || h == "implies" || h == "iff") {
      need_arity(e, 3, h);
      Formula::Ptr a = elaborate_formula(e.items[1], scope);
      Formula::Ptr b = elaborate_formula(e.items[2], scope);
      if (h == "and") return Formula::conj(a, b);
      if (h == "or") return Formula::disj(a, b);
      if (h == "implies") return Formula::implies(a, b);
      return Formula::iff(a, b);
    }
    if (h == "forall" || h == "exists") {
      need_arity(e, 3, h);
      return quantifier(e, h == "exists", scope);
    }
    if (h == "Believes!" || h == "Perceives!") {
      need_arity(e, 4, h);
      Term agent = elaborate_term(e.items[1], scope, Sort::Agent);
      Term time = elaborate_term(e.items[2], scope, Sort::Time);
      Formula::Ptr body = elaborate_formula(e.items[3], scope);
      return h == "Believes!" ? Formula::believes(agent, time, body)
                              : Formula::perceives(agent, time, body);
    }
    return atom(e, scope);
  }

  void need_arity(const SExpr& e, size_t n, const std::string& head) {
    if (e.items.size() != n)
      fail_at(e, "'" + head + "' takes " + std::to_string(n - 1) + " argument" +
                     (n == 2 ? "" : "s") + ", got " + std::to_string(e.items.size() - 1));
  }

  // --- quantifiers ---------------------------------------------------------

  Formula::Ptr quantifier(const SExpr& e, bool existential, BinderScope& scope) {
    // A bare symbol is shorthand for a one-element binder list.
    SExpr binder_list = e.items[1];
    if (binder_list.is_symbol()) {
      SExpr wrapped;
      wrapped.kind = SExpr::Kind::List;
      wrapped.line = binder_list.line;
      wrapped.col = binder_list.col;
      wrapped.items.push_back(std::move(binder_list));
      binder_list = std::move(wrapped);
    }
    if (!binder_list.is_list() || binder_list.items.empty())
      fail_at(binder_list, "quantifier needs a non-empty binder list");

    std::vector<Term> binders;
    std::vector<size_t> pending;  // indices into binders with inferred sort
    for (const SExpr& binder : binder_list.items) {
      if (binder.is_symbol()) {
        check_binder_name(binder);
        binders.push_back(Term::variable(binder.text, Sort::Object));
        pending.push_back(binders.size() - 1);
      } else {
        if (binder.items.size() != 2 || !binder.items[0].is_symbol() || !binder.items[1].is_symbol())
          fail_at(binder, "binder must be a name or (name sort)");
        check_binder_name(binder.items[0]);
        auto sort = sort_from_name(binder.items[1].text);
        if (!sort) fail_at(binder.items[1], "unknown sort '" + binder.items[1].text + "'");
        binders.push_back(Term::variable(binder.items[0].text, *sort));
      }
    }

    // Sort inference for unannotated binders: the first constraining use in
    // the body (modal slot, '<' argument, or known-signature position) wins;
    // anything unconstrained is an object variable.
    if (!pending.empty()) {
      std::map<std::string, size_t> open;
      for (size_t i : pending) open[binders[i].symbol] = i;
      infer_binder_sorts(e.items[2], open, binders);
    }

    BinderScope inner = scope;
    for (const Term& b : binders) inner.stack.push_back(b);
    Formula::Ptr body = elaborate_formula(e.items[2], inner);

    // (exists (vs) phi) is the defined form (not (forall (vs) (not phi))).
    if (existential) body = Formula::negation(body);
    for (auto it = binders.rbegin(); it != binders.rend(); ++it)
      body = Formula::forall(*it, body);
    if (existential) body = Formula::negation(body);
    return body;
  }

  void check_binder_name(const SExpr& name) {
    if (name.text.empty() || name.text[0] == ':')
      fail_at(name, "invalid binder name");
    if (reserved_heads().count(name.text) || name.text == "<" || name.text == "=")
      fail_at(name, "'" + name.text + "' cannot be a variable name");
    if (is_time_literal(name.text))
      fail_at(name, "'" + name.text + "' is a reserved time literal");
  }

  void assign_if_open(const SExpr& arg, std::map<std::string, size_t>& open,
                      std::vector<Term>& binders, Sort sort) {
    if (!arg.is_symbol()) return;
    auto it = open.find(arg.text);
    if (it == open.end()) return;
    binders[it->second].sort = sort;
    open.erase(it);
  }

  void infer_binder_sorts(const SExpr& e, std::map<std::string, size_t> open,
                          std::vector<Term>& binders) {
    if (open.empty() || e.is_symbol()) return;
    if (e.items.empty()) return;
    const SExpr& head = e.items[0];
    if (!head.is_symbol()) return;
    const std::string& h = head.text;

    if (h == "not" || h == "and" || h == "or" || h == "implies" || h == "iff") {
      for (size_t i = 1; i < e.items.size(); ++i) infer_binder_sorts(e.items[i], open, binders);
      return;
    }
    if (h == "forall" || h == "exists") {
      if (e.items.size() != 3 || !e.items[1].is_list()) return;
      std::map<std::string, size_t> shadowless = open;
      for (const SExpr& binder : e.items[1].items) {
        const SExpr* name = binder.is_symbol() ? &binder
                            : (!binder.items.empty() && binder.items[0].is_symbol())
                                ? &binder.items[0]
                                : nullptr;
        if (name) shadowless.erase(name->text);
      }
      infer_binder_sorts(e.items[2], shadowless, binders);
      return;
    }
    if (h == "Believes!" || h == "Perceives!") {
      if (e.items.size() != 4) return;
      assign_if_open(e.items[1], open, binders, Sort::Agent);
      assign_if_open(e.items[2], open, binders, Sort::Time);
      infer_binder_sorts(e.items[3], open, binders);
      return;
    }
    if (h == "<") {
      for (size_t i = 1; i < e.items.size(); ++i)
        assign_if_open(e.items[i], open, binders, Sort::Time);
      return;
    }
    if (h == "=") return;  // no constraint: equality is sort-polymorphic
    // Predicate with an already-known signature constrains its argument slots.
    auto sig = symbols_.predicates.find(h);
    if (sig != symbols_.predicates.end()) {
      for (size_t i = 1; i < e.items.size() && i - 1 < sig->second.size(); ++i)
        assign_if_open(e.items[i], open, binders, sig->second[i - 1]);
    }
  }

  // --- atoms and terms -----------------------------------------------------

  Formula::Ptr atom(const SExpr& e, BinderScope& scope) {
    if (e.is_symbol()) {
      commit_predicate(e, e.text, {});
      return Formula::atom(e.text, {});
    }
    const SExpr& head = e.items[0];
    const std::string& h = head.text;
    if (!h.empty() && h[0] == ':') fail_at(head, "keyword '" + h + "' is not a predicate");
    if (reserved_heads().count(h)) fail_at(head, "reserved head '" + h + "' misused");

    if (h == "<" || h == "=") {
      if (e.items.size() != 3) fail_at(e, "'" + h + "' takes 2 arguments");
      Term a, b;
      if (h == "<") {
        a = elaborate_term(e.items[1], scope, Sort::Time);
        b = elaborate_term(e.items[2], scope, Sort::Time);
      } else {
        auto hint = peek_sort(e.items[1], scope);
        if (!hint) hint = peek_sort(e.items[2], scope);
        a = elaborate_term(e.items[1], scope, hint);
        b = elaborate_term(e.items[2], scope, a.sort);
        if (a.sort != b.sort) fail_at(e.items[2], "'=' arguments must share a sort");
      }
      return Formula::atom(h, {a, b});
    }

    std::vector<Term> args;
    auto sig = symbols_.predicates.find(h);
    if (sig != symbols_.predicates.end()) {
      if (sig->second.size() != e.items.size() - 1)
        fail_at(e, "predicate '" + h + "' takes " + std::to_string(sig->second.size()) +
                       " argument(s), got " + std::to_string(e.items.size() - 1));
      for (size_t i = 1; i < e.items.size(); ++i)
        args.push_back(elaborate_term(e.items[i], scope, sig->second[i - 1]));
    } else {
      for (size_t i = 1; i < e.items.size(); ++i)
        args.push_back(elaborate_term(e.items[i], scope, std::nullopt));
      commit_predicate(e, h, args);
    }
    return Formula::atom(h, std::move(args));
  }

  void commit_predicate(const SExpr& e, const std::string& name, const std::vector<Term>& args) {
    std::vector<Sort> sig;
    sig.reserve(args.size());
    for (const Term& a : args) sig.push_back(a.sort);
    auto [it, fresh] = symbols_.predicates.emplace(name, sig);
    if (!fresh && it->second != sig) {
      if (it->second.size() != sig.size())
        fail_at(e, "predicate '" + name + "' takes " + std::to_string(it->second.size()) +
                       " argument(s), got " + std::to_string(sig.size()));
      fail_at(e, "predicate '" + name + "' used with mismatching argument sorts");
    }
  }

  // Resolves a term's sort without committing any new symbol.
  std::optional<Sort> peek_sort(const SExpr& e, const BinderScope& scope) {
    if (e.is_symbol()) {
      if (const Term* v = scope.lookup(e.text)) return v->sort;
      if (auto it = symbols_.constants.find(e.text); it != symbols_.constants.end())
        return it->second;
      if (auto it = symbols_.variables.find(e.text); it != symbols_.variables.end())
        return it->second;
      if (is_time_literal(e.text)) return Sort::Time;
      return std::nullopt;
    }
    if (e.items.empty() || !e.items[0].is_symbol()) return std::nullopt;
    if (auto it = symbols_.functions.find(e.items[0].text); it != symbols_.functions.end())
      return it->second.second;
    return std::nullopt;
  }

  Term elaborate_term(const SExpr& e, BinderScope& scope, std::optional<Sort> expected) {
    if (e.is_symbol()) {
      const std::string& name = e.text;
      if (name.empty() || name[0] == ':') fail_at(e, "keyword '" + name + "' is not a term");
      if (reserved_heads().count(name) || name == "<" || name == "=")
        fail_at(e, "'" + name + "' cannot be used as a term");

      if (const Term* v = scope.lookup(name)) {
        check_expected(e, v->sort, expected, "variable '" + name + "'");
        return *v;
      }
      if (auto it = symbols_.variables.find(name); it != symbols_.variables.end()) {
        check_expected(e, it->second, expected, "variable '" + name + "'");
        return Term::variable(name, it->second);
      }
      if (auto it = symbols_.constants.find(name); it != symbols_.constants.end()) {
        check_expected(e, it->second, expected, "constant '" + name + "'");
        return Term::constant(name, it->second);
      }
      if (is_time_literal(name)) {
        check_expected(e, Sort::Time, expected, "time literal '" + name + "'");
        symbols_.constants.emplace(name, Sort::Time);
        return Term::constant(name, Sort::Time);
      }
      if (symbols_.strict)
        fail_at(e, "undeclared constant '" + name + "' (strict mode)");
      Sort sort = expected.value_or(Sort::Object);
      symbols_.constants.emplace(name, sort);
      return Term::constant(name, sort);
    }

    // Function application.
    if (e.items.empty() || !e.items[0].is_symbol())
      fail_at(e, "function application needs a symbol head");
    const std::string& fn = e.items[0].text;
    if (reserved_heads().count(fn) || fn == "<" || fn == "=" || fn[0] == ':')
      fail_at(e.items[0], "'" + fn + "' cannot head a term");
    if (e.items.size() < 2) fail_at(e, "function application needs arguments");

    auto it = symbols_.functions.find(fn);
    std::vector<Term> args;
    if (it != symbols_.functions.end()) {
      const auto& [arg_sorts, result] = it->second;
      if (arg_sorts.size() != e.items.size() - 1)
        fail_at(e, "function '" + fn + "' takes " + std::to_string(arg_sorts.size()) +
                       " argument(s), got " + std::to_string(e.items.size() - 1));
      for (size_t i = 1; i < e.items.size(); ++i)
        args.push_back(elaborate_term(e.items[i], scope, arg_sorts[i - 1]));
      check_expected(e, result, expected, "function '" + fn + "'");
      return Term::application(fn, std::move(args), result);
    }
    if (symbols_.strict) fail_at(e, "undeclared function '" + fn + "' (strict mode)");
    for (size_t i = 1; i < e.items.size(); ++i)
      args.push_back(elaborate_term(e.items[i], scope, std::nullopt));
    Sort result = expected.value_or(Sort::Object);
    std::vector<Sort> arg_sorts;
    for (const Term& a : args) arg_sorts.push_back(a.sort);
    symbols_.functions.emplace(fn, std::make_pair(arg_sorts, result));
    return Term::application(fn, std::move(args), result);
  }

  void check_expected(const SExpr& e, Sort actual, std::optional<Sort> expected,
                      const std::string& what) {
    if (expected && *expected != actual)
      fail_at(e, what + " has sort " + std::string(sort_name(actual)) + " where " +
                     std::string(sort_name(*expected)) + " is required");
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Public formula entry points

Formula::Ptr parse_formula(const std::string& text, SymbolTable& symbols) {
  Reader reader(text);
  SExpr tree = reader.read_one();
  Elaborator el(symbols);
  return el.formula(tree);
}

Formula::Ptr parse_formula(const std::string& text) {
  SymbolTable symbols;
  return parse_formula(text, symbols);
}

// ---------------------------------------------------------------------------
// Problems

namespace {

const SExpr& expect_list(const SExpr& e, const char* what) {
  if (!e.is_list()) fail_at(e, std::string("expected ") + what);
  return e;
}

void load_declarations(const SExpr& decls, SymbolTable& symbols) {
  expect_list(decls, "a declaration list");
  for (const SExpr& group : decls.items) {
    expect_list(group, "a declaration group (sort name...)");
    if (group.items.empty() || !group.items[0].is_symbol())
      fail_at(group, "declaration group must start with a sort");
    auto sort = sort_from_name(group.items[0].text);
    if (!sort) fail_at(group.items[0], "unknown sort '" + group.items[0].text + "'");
    for (size_t i = 1; i < group.items.size(); ++i) {
      const SExpr& name = group.items[i];
      if (!name.is_symbol()) fail_at(name, "constant name must be a symbol");
      if (name.text[0] == ':' || reserved_heads().count(name.text) || name.text == "<" ||
          name.text == "=")
        fail_at(name, "'" + name.text + "' cannot be a constant name");
      if (is_time_literal(name.text) && *sort != Sort::Time)
        fail_at(name, "'" + name.text + "' is a reserved time literal");
      auto [it, fresh] = symbols.constants.emplace(name.text, *sort);
      if (!fresh && it->second != *sort)
        fail_at(name, "constant '" + name.text + "' declared with two sorts");
    }
  }
}

}  // namespace

Problem parse_problem(const std::string& text, const ParseOptions& options) {
  Reader reader(text);
  SExpr top = reader.read_one();
  if (!top.is_list() || top.items.empty() || !top.items[0].is_symbol() ||
      top.items[0].text != "define-problem")
    fail_at(top, "expected a (define-problem ...) form");
  if (top.items.size() < 2 || !top.items[1].is_symbol() || top.items[1].text[0] == ':')
    fail_at(top, "define-problem needs a name");

  Problem problem;
  problem.name = top.items[1].text;

  SymbolTable symbols;
  Elaborator el(symbols);

  const SExpr* decl_section = nullptr;
  const SExpr* assumption_section = nullptr;
  const SExpr* goal_section = nullptr;

  size_t i = 2;
  while (i < top.items.size()) {
    const SExpr& key = top.items[i];
    if (!key.is_symbol() || key.text.empty() || key.text[0] != ':')
      fail_at(key, "expected a section keyword");
    if (i + 1 >= top.items.size()) fail_at(key, "section '" + key.text + "' has no body");
    const SExpr& value = top.items[i + 1];
    if (key.text == ":declarations") {
      if (decl_section) fail_at(key, "duplicate :declarations section");
      decl_section = &value;
    } else if (key.text == ":assumptions") {
      if (assumption_section) fail_at(key, "duplicate :assumptions section");
      assumption_section = &value;
    } else if (key.text == ":goal") {
      if (goal_section) fail_at(key, "duplicate goal");
      goal_section = &value;
    } else {
      fail_at(key, "unknown section '" + key.text + "'");
    }
    i += 2;
  }

  symbols.strict = options.strict;
  if (decl_section) load_declarations(*decl_section, symbols);

  if (assumption_section) {
    expect_list(*assumption_section, "an assumption list");
    for (const SExpr& entry : assumption_section->items) {
      expect_list(entry, "an assumption (label formula)");
      if (entry.items.size() != 2 || !entry.items[0].is_symbol())
        fail_at(entry, "assumption must be (label formula)");
      const std::string& label = entry.items[0].text;
      if (label.empty() || label[0] == ':') fail_at(entry.items[0], "invalid assumption label");
      if (problem.assumption(label))
        fail_at(entry.items[0], "duplicate assumption label '" + label + "'");
      Formula::Ptr f = el.formula(entry.items[1]);
      if (!free_variables(f).empty())
        fail_at(entry.items[1], "assumption '" + label + "' has free variables");
      problem.assumptions.emplace_back(label, std::move(f));
    }
  }

  if (!goal_section) throw ParseError(top.line, top.col, "missing :goal");
  problem.goal = el.formula(*goal_section);
  if (!free_variables(problem.goal).empty())
    fail_at(*goal_section, "goal has free variables");

  // Record the fully resolved constant vocabulary.
  problem.declarations = symbols.constants;
  return problem;
}

std::string render_problem(const Problem& problem) {
  std::string out = "(define-problem " + problem.name + "\n";

  out += "  :declarations (";
  bool first_group = true;
  for (Sort sort : {Sort::Agent, Sort::Time, Sort::Object, Sort::Fluent}) {
    std::vector<std::string> names;
    for (const auto& [name, s] : problem.declarations)
      if (s == sort) names.push_back(name);
    if (names.empty()) continue;
    std::sort(names.begin(), names.end());
    if (!first_group) out += ' ';
    first_group = false;
    out += '(';
    out += sort_name(sort);
    for (const std::string& n : names) {
      out += ' ';
      out += n;
    }
    out += ')';
  }
  out += ")\n";

  out += "  :assumptions (";
  for (size_t i = 0; i < problem.assumptions.size(); ++i) {
    if (i) out += "\n                ";
    out += '(';
    out += problem.assumptions[i].first;
    out += ' ';
    out += problem.assumptions[i].second->render();
    out += ')';
  }
  out += ")\n";

  out += "  :goal ";
  out += problem.goal->render();
  out += ")\n";
  return out;
}

bool equal(const Problem& a, const Problem& b) {
  if (a.name != b.name || a.declarations != b.declarations) return false;
  if (a.assumptions.size() != b.assumptions.size()) return false;
  for (size_t i = 0; i < a.assumptions.size(); ++i) {
    if (a.assumptions[i].first != b.assumptions[i].first) return false;
    if (!equal(a.assumptions[i].second, b.assumptions[i].second)) return false;
  }
  return equal(a.goal, b.goal);
}

}  // namespace mucalc
