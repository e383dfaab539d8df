#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mucalc/fo_prover.hpp"
#include "mucalc/formula.hpp"
#include "mucalc/parser.hpp"
#include "mucalc/problem.hpp"

namespace mucalc {

// One premise fed to a first-order call. Assumptions are named in the
// ambient context (problem labels at the top level, p1, p2, ... premise
// labels inside a belief-closure subderivation); theory premises are
// ground time-order facts the checker re-validates against the oracle;
// the negated goal closes the refutation set.
struct FoSource {
  enum class Kind : std::uint8_t { Assumption, Theory, NegatedGoal };
  Kind kind = Kind::Assumption;
  std::string label;
  Formula::Ptr formula;
};

struct ProofNode;
using ProofPtr = std::shared_ptr<const ProofNode>;

// Derivation tree. Each node states the formula it concludes in its
// context; the checker re-validates every node against the problem, the
// time oracle, and the recorded refutations.
struct ProofNode {
  enum class Kind : std::uint8_t {
    Assumption,     // labelled context assumption
    Theory,         // ground time-order fact
    Perception,     // Perceives(a,t1,p) + t1<t2  =>  Believes(a,t2,p)
    BeliefClosure,  // Believes(a,ti,pi), ti<t, subproof of p  =>  Believes(a,t,p)
    Fo,             // refutation of sources + negated conclusion
  };

  Kind kind = Kind::Assumption;
  Formula::Ptr conclusion;

  std::string label;               // Assumption
  ProofPtr premise;                // Perception
  std::vector<ProofPtr> premises;  // BeliefClosure belief premises, in p1.. order
  ProofPtr derivation;             // BeliefClosure subproof of the body
  std::vector<FoSource> sources;   // Fo
  Refutation refutation;           // Fo
};

// JSON forms are versioned; `proof_from_json` rejects unknown versions
// and malformed nodes with std::invalid_argument. Formulas are stored as
// canonical renders and re-parsed with the given symbol table; clause
// strings are never parsed, only recomputed and compared.
inline constexpr int kProofFormatVersion = 1;

nlohmann::json proof_node_to_json(const ProofPtr& node);
ProofPtr proof_node_from_json(const nlohmann::json& j, SymbolTable& table);

nlohmann::json proof_to_json(const ProofPtr& root);
ProofPtr proof_from_json(const nlohmann::json& j, SymbolTable& table);

// Symbol table seeded with a problem's resolved vocabulary, for
// re-parsing formulas out of proof and verdict files.
SymbolTable table_for(const Problem& problem);

}  // namespace mucalc
