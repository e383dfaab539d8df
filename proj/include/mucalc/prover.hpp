#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "mucalc/fo_prover.hpp"
#include "mucalc/problem.hpp"
#include "mucalc/proof.hpp"
#include "mucalc/time_oracle.hpp"

namespace mucalc {

struct ProverOptions {
  // Maximum nesting of modal rule applications. The flagship scenario
  // needs three levels (system, student, embodiment); default adds one
  // of margin.
  int max_depth = 4;
  // When set, belief closure also admits premises whose time equals the
  // goal time; the default demands strictly earlier premises.
  bool reflexive_belief_time = false;
  // Wall-clock limit for the whole attempt.
  std::chrono::milliseconds timeout{10000};
  // Per-call limits for the first-order backend.
  Budget fo_budget{};
};

struct Verdict {
  bool proved = false;
  // When not proved: "saturated", "depth-limit", "clause-limit", or
  // "timeout" — the strongest cutoff encountered anywhere in the search.
  std::string reason;
  ProofPtr proof;
  std::chrono::milliseconds elapsed{0};
  std::size_t fo_calls = 0;
  std::size_t clauses_kept = 0;
};

// Proof search: assumption lookup, then the perception rule, then belief
// closure (recursing on the collected belief bodies), then a first-order
// refutation over the shadowed context. Deterministic apart from budget
// cutoffs.
class Prover {
 public:
  Prover(const Problem& problem, ProverOptions options = {});

  Verdict prove();

  const TimeOracle& oracle() const { return oracle_; }

 private:
  using Context = std::vector<std::pair<std::string, Formula::Ptr>>;

  ProofPtr attempt(const Formula::Ptr& goal, const Context& ctx, int depth);
  ProofPtr attempt_fo(const Formula::Ptr& goal, const Context& ctx);
  bool closure_time_ok(const Term& premise_time, const Term& goal_time) const;
  std::chrono::milliseconds remaining() const;
  void note_reason(const std::string& reason);

  const Problem& problem_;
  ProverOptions options_;
  TimeOracle oracle_;
  std::vector<Term> horizon_;
  std::chrono::steady_clock::time_point start_;
  int reason_rank_ = 0;
  std::string reason_;
  std::size_t fo_calls_ = 0;
  std::size_t clauses_kept_ = 0;
};

Verdict prove(const Problem& problem, const ProverOptions& options = {});

// Shadows the sources in order with a fresh map, then clausifies them
// with deterministic fresh names; both the prover and the checker derive
// first-order input clauses through this one path.
std::vector<InputClause> prepare_fo_inputs(const std::vector<FoSource>& sources);

// Oracle over the problem's declared time constants and the ground time
// facts asserted among its assumptions. Throws std::invalid_argument if
// those facts are inconsistent.
TimeOracle oracle_for(const Problem& problem);

// Reflexivity, symmetry, and transitivity of `=` over one sort. Injected
// into first-order calls only when `=` occurs over that sort outside any
// modal context (there is no paramodulation in the backend).
std::vector<Formula::Ptr> equality_axioms(Sort sort);

}  // namespace mucalc
