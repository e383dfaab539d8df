#pragma once

#include <string>

#include "mucalc/problem.hpp"
#include "mucalc/proof.hpp"
#include "mucalc/prover.hpp"

namespace mucalc {

struct CheckResult {
  bool ok = true;
  std::string error;  // "<node path>: <message>" when not ok

  static CheckResult pass() { return {}; }
  static CheckResult fail(std::string message) { return {false, std::move(message)}; }
};

// Re-validates a derivation against the problem without trusting the
// search: the root must conclude the goal, every assumption must match
// its context, every time side condition must hold under the oracle, and
// every recorded first-order step must replay from its parents to the
// identical canonical clause. Options matter only for the reflexive
// belief-time side condition.
CheckResult check_proof(const Problem& problem, const ProofPtr& proof,
                        const ProverOptions& options = {});

}  // namespace mucalc
