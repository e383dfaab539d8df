#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mucalc/formula.hpp"

namespace mucalc {

// A named reasoning problem: labelled assumptions and a single goal.
// `declarations` holds the full resolved constant vocabulary (declared in
// the source file plus auto-declared constants), so rendering a parsed
// problem reproduces it exactly.
struct Problem {
  std::string name;
  std::map<std::string, Sort> declarations;
  std::vector<std::pair<std::string, Formula::Ptr>> assumptions;
  Formula::Ptr goal;

  const Formula::Ptr* assumption(const std::string& label) const {
    for (const auto& [l, f] : assumptions)
      if (l == label) return &f;
    return nullptr;
  }
};

bool equal(const Problem& a, const Problem& b);

}  // namespace mucalc
