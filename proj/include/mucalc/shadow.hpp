#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mucalc/formula.hpp"

namespace mucalc {

// One allocated shadow predicate: the skeleton it stands for and the
// sorts of its argument slots.
struct ShadowEntry {
  std::string predicate;
  std::vector<Sort> arg_sorts;
  std::string skeleton;
};

// Allocates shadow predicates for modal subformulae. Two occurrences get
// the same predicate exactly when their skeletons agree: the skeleton
// abstracts every free-variable or ground-term leaf to a numbered hole
// (equal leaves share a hole) and renders bound variables positionally,
// so alpha-variants and ground instances of one belief shape coincide.
//
// Allocation order is the interning order, which makes the mapping
// reproducible from the formula order alone.
class ShadowMap {
 public:
  explicit ShadowMap(std::set<std::string> taken = {});

  const ShadowEntry& intern(const std::string& skeleton, const std::vector<Sort>& arg_sorts);

  // Entries in allocation order.
  const std::vector<ShadowEntry>& entries() const { return order_; }

 private:
  std::set<std::string> taken_;
  std::map<std::string, std::size_t> by_skeleton_;
  std::vector<ShadowEntry> order_;
  int next_ = 0;
};

// Replaces every maximal modal subformula by its shadow atom: the shadow
// predicate applied to the occurrence's leaves in first-occurrence order.
// Non-modal structure is preserved. Idempotent on modal-free formulas.
Formula::Ptr shadow(const Formula::Ptr& f, ShadowMap& map);

}  // namespace mucalc
