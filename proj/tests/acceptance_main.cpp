// Acceptance harness: exercises the seven release criteria end to end and
// prints exactly one PASS/FAIL line per criterion. Exit status is 0 only
// when every criterion passes.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <semaphore>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mucalc/clausify.hpp"
#include "mucalc/fo_prover.hpp"
#include "mucalc/kernel.hpp"
#include "mucalc/parser.hpp"
#include "mucalc/prover.hpp"
#include "mucalc/scenario.hpp"
#include "support/gen.hpp"

using namespace mucalc;

namespace {

// ---------------------------------------------------------------------------
// Corpus cache: every criterion that needs corpus verdicts shares one run.

struct CorpusRun {
  CorpusEntry entry;
  Verdict verdict;
  bool kernel_ok = false;
  std::string kernel_error;
};

std::vector<CorpusRun> run_corpus() {
  const std::vector<CorpusEntry> entries = corpus();
  const unsigned n_workers = std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
  std::counting_semaphore<64> slots(n_workers);
  std::vector<std::future<CorpusRun>> futures;
  futures.reserve(entries.size());
  for (const CorpusEntry& entry : entries) {
    futures.push_back(std::async(std::launch::async, [entry, &slots] {
      slots.acquire();
      CorpusRun run{entry, {}, false, {}};
      Prover prover(entry.problem);
      run.verdict = prover.prove();
      if (run.verdict.proved) {
        CheckResult check = check_proof(entry.problem, run.verdict.proof, {});
        run.kernel_ok = check.ok;
        run.kernel_error = check.error;
      }
      slots.release();
      return run;
    }));
  }
  std::vector<CorpusRun> out;
  out.reserve(entries.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

const CorpusRun* find_run(const std::vector<CorpusRun>& runs, const std::string& name) {
  for (const auto& r : runs)
    if (r.entry.name == name) return &r;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Criterion 1: flagship scenario proved, kernel-checked, nested structure.

bool flagship(const std::vector<CorpusRun>& runs, std::string& detail) {
  const CorpusRun* run = find_run(runs, "teleport-default");
  if (!run) {
    detail = "corpus has no teleport-default entry";
    return false;
  }
  if (!run->verdict.proved) {
    detail = "not proved (reason: " + run->verdict.reason + ")";
    return false;
  }
  if (run->verdict.elapsed.count() > 10000) {
    detail = "exceeded the 10 s budget: " + std::to_string(run->verdict.elapsed.count()) + " ms";
    return false;
  }
  if (!run->kernel_ok) {
    detail = "kernel rejected the proof: " + run->kernel_error;
    return false;
  }
  const ProofPtr& root = run->verdict.proof;
  const bool nested =
      root->kind == ProofNode::Kind::BeliefClosure &&
      root->conclusion->agent() == Term::constant("system", Sort::Agent) &&
      root->derivation != nullptr &&
      root->derivation->kind == ProofNode::Kind::BeliefClosure &&
      root->derivation->conclusion->agent() == Term::constant("student", Sort::Agent);
  if (!nested) {
    detail = "proof lacks the system-over-student nested closure";
    return false;
  }
  detail = "proved in " + std::to_string(run->verdict.elapsed.count()) +
           " ms, kernel-checked, nested closure system>student intact";
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 2: each dropped assumption flips the verdict.

bool negative_controls(const std::vector<CorpusRun>& runs, std::string& detail) {
  int held = 0;
  std::ostringstream bad;
  for (const char* name :
       {"teleport-no-A1", "teleport-no-A2", "teleport-no-A3", "teleport-no-A4"}) {
    const CorpusRun* run = find_run(runs, name);
    if (!run) {
      bad << ' ' << name << ":missing";
      continue;
    }
    if (run->verdict.proved)
      bad << ' ' << name << ":proved";
    else
      ++held;
  }
  if (held == 4) {
    detail = "4/4 weakened variants not proved within budget";
    return true;
  }
  detail = std::to_string(held) + "/4 controls held; failures:" + bad.str();
  return false;
}

// ---------------------------------------------------------------------------
// Criterion 3: kernel accepts every produced proof, rejects every mutant.

// Rebuilds the tree with the first node (preorder) the mutator accepts
// replaced by its mutated copy; `done` reports whether anything matched.
ProofPtr mutate_first(const ProofPtr& node, const std::function<bool(ProofNode&)>& mutator,
                      bool& done) {
  auto copy = std::make_shared<ProofNode>(*node);
  if (!done && mutator(*copy)) {
    done = true;
    return copy;
  }
  if (copy->premise) copy->premise = mutate_first(copy->premise, mutator, done);
  for (auto& p : copy->premises) p = mutate_first(p, mutator, done);
  if (copy->derivation) copy->derivation = mutate_first(copy->derivation, mutator, done);
  return copy;
}

struct Mutation {
  std::string name;
  std::function<bool(ProofNode&)> apply;
};

std::vector<Mutation> mutations() {
  const Term t0 = Term::constant("t0", Sort::Time);
  std::vector<Mutation> out;
  out.push_back({"negated-conclusion", [](ProofNode& n) {
                   n.conclusion = Formula::negation(n.conclusion);
                   return true;
                 }});
  out.push_back({"forged-label", [](ProofNode& n) {
                   if (n.kind != ProofNode::Kind::Assumption) return false;
                   n.label = "nosuch";
                   return true;
                 }});
  out.push_back({"negated-assumption", [](ProofNode& n) {
                   if (n.kind != ProofNode::Kind::Assumption) return false;
                   n.conclusion = Formula::negation(n.conclusion);
                   return true;
                 }});
  out.push_back({"retimed-closure", [t0](ProofNode& n) {
                   if (n.kind != ProofNode::Kind::BeliefClosure) return false;
                   if (n.premises.empty()) return false;
                   if (n.conclusion->time() == t0) return false;
                   n.conclusion = Formula::believes(n.conclusion->agent(), t0,
                                                    n.conclusion->body());
                   return true;
                 }});
  out.push_back({"retimed-perception", [](ProofNode& n) {
                   if (n.kind != ProofNode::Kind::Perception) return false;
                   n.conclusion = Formula::believes(n.conclusion->agent(),
                                                    n.premise->conclusion->time(),
                                                    n.conclusion->body());
                   return true;
                 }});
  out.push_back({"dropped-step", [](ProofNode& n) {
                   if (n.kind != ProofNode::Kind::Fo) return false;
                   if (n.refutation.steps.empty()) return false;
                   n.refutation.steps.pop_back();
                   return true;
                 }});
  out.push_back({"shifted-literal", [](ProofNode& n) {
                   if (n.kind != ProofNode::Kind::Fo) return false;
                   for (auto& step : n.refutation.steps)
                     if (step.kind == TraceClause::Kind::Resolve) {
                       step.literal_a += 5;
                       return true;
                     }
                   return false;
                 }});
  out.push_back({"junk-clause", [](ProofNode& n) {
                   if (n.kind != ProofNode::Kind::Fo) return false;
                   if (n.refutation.steps.empty()) return false;
                   auto& step = n.refutation.steps.back();
                   const std::string recorded =
                       step.rendered.empty() ? step.clause.render() : step.rendered;
                   step.rendered = recorded + " | (Junk)";
                   return true;
                 }});
  out.push_back({"swapped-premises", [](ProofNode& n) {
                   if (n.kind != ProofNode::Kind::BeliefClosure) return false;
                   if (n.premises.size() < 2) return false;
                   if (alpha_equivalent(n.premises[0]->conclusion,
                                        n.premises[1]->conclusion))
                     return false;
                   std::swap(n.premises[0], n.premises[1]);
                   return true;
                 }});
  return out;
}

bool kernel_soundness(const std::vector<CorpusRun>& runs, std::string& detail) {
  int proofs = 0;
  for (const auto& run : runs) {
    if (!run.verdict.proved) continue;
    ++proofs;
    if (!run.kernel_ok) {
      detail = "genuine proof rejected (" + run.entry.name + "): " + run.kernel_error;
      return false;
    }
  }
  if (proofs == 0) {
    detail = "no proofs produced to check";
    return false;
  }

  int mutants = 0;
  int survivors = 0;
  std::ostringstream surviving;
  for (const auto& run : runs) {
    if (!run.verdict.proved || !run.kernel_ok) continue;
    for (const Mutation& m : mutations()) {
      bool done = false;
      ProofPtr mutant = mutate_first(run.verdict.proof, m.apply, done);
      if (!done) continue;  // mutation not applicable to this proof shape
      ++mutants;
      if (check_proof(run.entry.problem, mutant, {}).ok) {
        ++survivors;
        surviving << ' ' << run.entry.name << '/' << m.name;
      }
    }
  }
  if (mutants < 20) {
    detail = "only " + std::to_string(mutants) + " applicable mutants (need 20)";
    return false;
  }
  if (survivors != 0) {
    detail = std::to_string(survivors) + "/" + std::to_string(mutants) +
             " mutants passed the kernel:" + surviving.str();
    return false;
  }
  detail = std::to_string(proofs) + "/" + std::to_string(proofs) +
           " genuine proofs accepted; " + std::to_string(mutants) +
           "/" + std::to_string(mutants) + " mutants rejected";
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 4: propositional fragment agrees with a truth table.

bool truth_eval(const Formula::Ptr& f, unsigned mask) {
  switch (f->kind()) {
    case Formula::Kind::Atom: {
      if (f->predicate() == "P") return mask & 1u;
      if (f->predicate() == "Q") return mask & 2u;
      return mask & 4u;  // R
    }
    case Formula::Kind::Not:
      return !truth_eval(f->lhs(), mask);
    case Formula::Kind::And:
      return truth_eval(f->lhs(), mask) && truth_eval(f->rhs(), mask);
    case Formula::Kind::Or:
      return truth_eval(f->lhs(), mask) || truth_eval(f->rhs(), mask);
    case Formula::Kind::Implies:
      return !truth_eval(f->lhs(), mask) || truth_eval(f->rhs(), mask);
    case Formula::Kind::Iff:
      return truth_eval(f->lhs(), mask) == truth_eval(f->rhs(), mask);
    default:
      return false;  // unreachable for this fragment
  }
}

bool table_valid(const Formula::Ptr& f) {
  for (unsigned mask = 0; mask < 8; ++mask)
    if (!truth_eval(f, mask)) return false;
  return true;
}

bool prover_valid(const Formula::Ptr& f) {
  FreshNames fresh;
  const std::vector<Clause> clauses = clausify(Formula::negation(f), fresh);
  std::vector<InputClause> inputs;
  inputs.reserve(clauses.size());
  for (std::size_t i = 0; i < clauses.size(); ++i)
    inputs.push_back({clauses[i], static_cast<int>(i)});
  Budget budget;
  budget.max_clauses = 4000;
  budget.max_time = std::chrono::milliseconds(2000);
  return prove_fo(inputs, budget).outcome == FoOutcome::Proved;
}

bool propositional_oracle(std::string& detail) {
  // All formulas over {P, Q, R} with at most three connectives, grouped
  // by exact connective count.
  std::vector<std::vector<Formula::Ptr>> level(4);
  for (const char* p : {"P", "Q", "R"}) level[0].push_back(Formula::atom(p));
  for (int k = 1; k <= 3; ++k) {
    for (const auto& f : level[k - 1]) level[k].push_back(Formula::negation(f));
    for (int i = 0; i <= k - 1; ++i) {
      const int j = k - 1 - i;
      for (const auto& a : level[i])
        for (const auto& b : level[j]) {
          level[k].push_back(Formula::conj(a, b));
          level[k].push_back(Formula::disj(a, b));
          level[k].push_back(Formula::implies(a, b));
          level[k].push_back(Formula::iff(a, b));
        }
    }
  }
  std::vector<Formula::Ptr> all;
  for (const auto& lv : level) all.insert(all.end(), lv.begin(), lv.end());
  const std::size_t expected_count = 31476;
  if (all.size() != expected_count) {
    detail = "enumeration produced " + std::to_string(all.size()) + " formulas, expected " +
             std::to_string(expected_count);
    return false;
  }

  const unsigned n_workers = std::clamp(std::thread::hardware_concurrency(), 1u, 16u);
  const std::size_t chunk = (all.size() + n_workers - 1) / n_workers;
  struct ChunkResult {
    std::size_t disagreements = 0;
    std::string first;
  };
  std::vector<std::future<ChunkResult>> futures;
  for (unsigned w = 0; w < n_workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(all.size(), begin + chunk);
    if (begin >= end) break;
    futures.push_back(std::async(std::launch::async, [&all, begin, end] {
      ChunkResult r;
      for (std::size_t i = begin; i < end; ++i) {
        const bool oracle = table_valid(all[i]);
        const bool prover = prover_valid(all[i]);
        if (oracle != prover) {
          ++r.disagreements;
          if (r.first.empty())
            r.first = all[i]->render() + " (table " + (oracle ? "valid" : "invalid") +
                      ", prover " + (prover ? "valid" : "invalid") + ")";
        }
      }
      return r;
    }));
  }
  std::size_t disagreements = 0;
  std::size_t valid_count = 0;
  std::string first;
  for (auto& f : futures) {
    ChunkResult r = f.get();
    disagreements += r.disagreements;
    if (first.empty()) first = r.first;
  }
  for (const auto& f : all)
    if (table_valid(f)) ++valid_count;
  if (disagreements != 0) {
    detail = std::to_string(disagreements) + "/" + std::to_string(all.size()) +
             " disagreements; first: " + first;
    return false;
  }
  detail = std::to_string(all.size()) + " formulas, " + std::to_string(valid_count) +
           " valid, 0 disagreements with the truth table";
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 5: schema behavior — perception grid, closure pair, collapse.

bool schema_suites(const std::vector<CorpusRun>& runs, std::string& detail) {
  std::ostringstream bad;
  int grid_ok = 0;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) {
      std::ostringstream text;
      text << "(define-problem rp-" << i << '-' << j
           << " :assumptions ((a1 (Perceives! obs t" << i << " (Raining))))"
           << " :goal (Believes! obs t" << j << " (Raining)))";
      const Problem p = parse_problem(text.str());
      const Verdict v = Prover(p).prove();
      const bool expect = i < j;
      if (v.proved == expect)
        ++grid_ok;
      else
        bad << " t" << i << ">t" << j << (v.proved ? ":proved" : ":unproved");
    }

  struct Want {
    const char* name;
    bool proved;
  };
  int corpus_ok = 0;
  const std::vector<Want> wants = {{"belief-mp", true},
                                   {"belief-mp-reversed", false},
                                   {"belief-not-fact", false},
                                   {"fact-not-belief", false},
                                   {"belief-not-shared", false}};
  for (const Want& w : wants) {
    const CorpusRun* run = find_run(runs, w.name);
    if (run && run->verdict.proved == w.proved)
      ++corpus_ok;
    else
      bad << ' ' << w.name << ":unexpected";
  }

  if (grid_ok == 16 && corpus_ok == static_cast<int>(wants.size())) {
    detail = "perception grid 16/16 (belief follows exactly when earlier), closure and "
             "no-collapse checks 5/5";
    return true;
  }
  detail = "grid " + std::to_string(grid_ok) + "/16, corpus checks " +
           std::to_string(corpus_ok) + "/5; failures:" + bad.str();
  return false;
}

// ---------------------------------------------------------------------------
// Criterion 6: parse(render(p)) = p over generated problems.

bool parser_round_trip(std::string& detail) {
  gen::ProblemGen generator(20260823);
  const int total = 1000;
  int failures = 0;
  std::string first;
  for (int i = 0; i < total; ++i) {
    const Problem p = generator.problem(i);
    try {
      const Problem back = parse_problem(render_problem(p));
      if (!equal(back, p)) {
        ++failures;
        if (first.empty()) first = p.name;
      }
    } catch (const std::exception& e) {
      ++failures;
      if (first.empty()) first = p.name + " (" + e.what() + ")";
    }
  }
  if (failures != 0) {
    detail = std::to_string(failures) + "/" + std::to_string(total) +
             " round trips failed; first: " + first;
    return false;
  }
  detail = std::to_string(total) + "/" + std::to_string(total) + " generated problems " +
           "round-trip to structurally equal problems";
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 7: the time oracle stays a strict partial order.

bool time_oracle_properties(std::string& detail) {
  gen::TimeFactGen generator(4242);
  const std::vector<Term> pool = generator.pool();
  const int total = 1000;
  int accepted_sets = 0;
  int violations = 0;
  std::string first;

  auto note = [&](const std::string& what, int round) {
    ++violations;
    if (first.empty()) first = what + " (set " + std::to_string(round) + ")";
  };

  for (int round = 0; round < total; ++round) {
    TimeOracle oracle;
    for (const Term& t : pool) oracle.note_constant(t);
    bool accepted_all = true;
    for (const TimeFact& fact : generator.facts(3 + round % 6)) {
      try {
        oracle.add_fact(fact);
      } catch (const std::invalid_argument&) {
        accepted_all = false;  // rejected facts must leave the order intact
      }
    }
    if (accepted_all) ++accepted_sets;

    for (const Term& a : pool) {
      if (oracle.less(a, a) == Truth::True) note("reflexive <: " + a.render(), round);
      for (const Term& b : pool) {
        const bool ab = oracle.less(a, b) == Truth::True;
        const bool ba = oracle.less(b, a) == Truth::True;
        if (ab && ba) note("cycle: " + a.render() + " and " + b.render(), round);
        if (oracle.equal_times(a, b) == Truth::True && ab)
          note("equal yet ordered: " + a.render() + " " + b.render(), round);
        if (!ab) continue;
        for (const Term& c : pool)
          if (oracle.less(b, c) == Truth::True && oracle.less(a, c) != Truth::True)
            note("transitivity gap: " + a.render() + " < " + b.render() + " < " + c.render(),
                 round);
      }
    }
  }

  if (violations != 0) {
    detail = std::to_string(violations) + " order violations over " + std::to_string(total) +
             " sets; first: " + first;
    return false;
  }
  detail = std::to_string(total) + " fact sets (" + std::to_string(accepted_sets) +
           " fully accepted), zero order violations";
  return true;
}

// ---------------------------------------------------------------------------

struct Criterion {
  int id;
  std::string name;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
  const std::vector<CorpusRun> runs = run_corpus();

  const std::vector<Criterion> criteria = {
      {1, "flagship-scenario", [&](std::string& d) { return flagship(runs, d); }},
      {2, "negative-controls", [&](std::string& d) { return negative_controls(runs, d); }},
      {3, "kernel-soundness", [&](std::string& d) { return kernel_soundness(runs, d); }},
      {4, "propositional-oracle", [](std::string& d) { return propositional_oracle(d); }},
      {5, "schema-suites", [&](std::string& d) { return schema_suites(runs, d); }},
      {6, "parser-round-trip", [](std::string& d) { return parser_round_trip(d); }},
      {7, "time-oracle-order", [](std::string& d) { return time_oracle_properties(d); }},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    const bool ok = c.run(detail);
    if (!ok) ++failed;
    std::cout << (ok ? "PASS" : "FAIL") << ' ' << c.id << ' ' << c.name << ": " << detail
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
