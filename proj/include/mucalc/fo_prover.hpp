#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "mucalc/clause.hpp"

namespace mucalc {

// Resource limits for one first-order call.
struct Budget {
  std::size_t max_clauses = 20000;
  std::chrono::milliseconds max_time{5000};
};

// One derivation step. Clauses are stored in canonical form; literal
// indices refer to positions in the canonical parent clauses.
struct TraceClause {
  enum class Kind : std::uint8_t { Input, Resolve, Factor };
  Kind kind = Kind::Input;
  Clause clause;
  // Canonical render of `clause`. Serialized traces carry only this
  // string; the checker recomputes each clause and compares renders.
  std::string rendered;

  // Input: position in the caller's premise list.
  int premise_index = -1;

  // Resolve: two parents (trace positions) and the complementary literal
  // pair. The second parent's variables are renamed with prefix "w"
  // before unification. Factor: parent_a plus the two merged literals.
  int parent_a = -1;
  int parent_b = -1;
  int literal_a = -1;
  int literal_b = -1;
};

// A closed derivation of the empty clause; the final step is empty.
struct Refutation {
  std::vector<TraceClause> steps;
};

enum class FoOutcome : std::uint8_t { Proved, Saturated, Timeout, ClauseLimit };

struct FoResult {
  FoOutcome outcome = FoOutcome::Saturated;
  std::optional<Refutation> refutation;
  std::size_t generated = 0;
  std::size_t kept = 0;
  std::chrono::milliseconds elapsed{0};
};

struct InputClause {
  Clause clause;
  int premise_index = -1;
};

// Saturation by binary resolution and factoring over canonical clauses:
// given-clause loop, unit preference with a 1-in-5 oldest-first pick,
// forward subsumption and duplicate elimination. Deterministic for a
// fixed input order (up to budget cutoffs).
FoResult prove_fo(const std::vector<InputClause>& inputs, const Budget& budget);

// Re-derives one step from its canonical parents; used by the checker.
// Returns the canonical conclusion, or nullopt if the unification or the
// recorded indices are invalid.
std::optional<Clause> replay_resolution(const Clause& a, const Clause& b, int literal_a,
                                        int literal_b);
std::optional<Clause> replay_factor(const Clause& a, int literal_a, int literal_b);

}  // namespace mucalc
