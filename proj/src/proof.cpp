#include "mucalc/proof.hpp"

#include <stdexcept>

namespace mucalc {
namespace {

using nlohmann::json;

std::string source_kind_name(FoSource::Kind k) {
  switch (k) {
    case FoSource::Kind::Assumption:
      return "assumption";
    case FoSource::Kind::Theory:
      return "theory";
    case FoSource::Kind::NegatedGoal:
      return "negated-goal";
  }
  throw std::logic_error("source kind");
}

FoSource::Kind source_kind_from(const std::string& s) {
  if (s == "assumption") return FoSource::Kind::Assumption;
  if (s == "theory") return FoSource::Kind::Theory;
  if (s == "negated-goal") return FoSource::Kind::NegatedGoal;
  throw std::invalid_argument("proof: unknown source kind '" + s + "'");
}

json step_to_json(const TraceClause& step) {
  json j;
  j["clause"] = step.rendered.empty() ? step.clause.render() : step.rendered;
  switch (step.kind) {
    case TraceClause::Kind::Input:
      j["kind"] = "input";
      j["premise"] = step.premise_index;
      break;
    case TraceClause::Kind::Resolve:
      j["kind"] = "resolve";
      j["parents"] = json::array({step.parent_a, step.parent_b});
      j["literals"] = json::array({step.literal_a, step.literal_b});
      break;
    case TraceClause::Kind::Factor:
      j["kind"] = "factor";
      j["parent"] = step.parent_a;
      j["literals"] = json::array({step.literal_a, step.literal_b});
      break;
  }
  return j;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument("proof: " + msg);
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  require(it != j.end(), std::string("missing field '") + name + "'");
  return *it;
}

}  // namespace

json proof_node_to_json(const ProofPtr& node) {
  require(node != nullptr, "null node");
  json j;
  j["conclusion"] = node->conclusion->render();
  switch (node->kind) {
    case ProofNode::Kind::Assumption:
      j["rule"] = "assumption";
      j["label"] = node->label;
      break;
    case ProofNode::Kind::Theory:
      j["rule"] = "theory";
      break;
    case ProofNode::Kind::Perception:
      j["rule"] = "perception";
      j["premise"] = proof_node_to_json(node->premise);
      break;
    case ProofNode::Kind::BeliefClosure: {
      j["rule"] = "belief-closure";
      json premises = json::array();
      for (const auto& p : node->premises) premises.push_back(proof_node_to_json(p));
      j["premises"] = std::move(premises);
      j["derivation"] = proof_node_to_json(node->derivation);
      break;
    }
    case ProofNode::Kind::Fo: {
      j["rule"] = "resolution";
      json sources = json::array();
      for (const auto& s : node->sources) {
        json src;
        src["kind"] = source_kind_name(s.kind);
        if (s.kind == FoSource::Kind::Assumption) src["label"] = s.label;
        src["formula"] = s.formula->render();
        sources.push_back(std::move(src));
      }
      j["sources"] = std::move(sources);
      json steps = json::array();
      for (const auto& step : node->refutation.steps) steps.push_back(step_to_json(step));
      j["refutation"] = std::move(steps);
      break;
    }
  }
  return j;
}

ProofPtr proof_node_from_json(const json& j, SymbolTable& table) {
  require(j.is_object(), "node must be an object");
  auto node = std::make_shared<ProofNode>();
  const std::string rule = field(j, "rule").get<std::string>();
  const std::string conclusion = field(j, "conclusion").get<std::string>();
  node->conclusion = parse_formula(conclusion, table);

  if (rule == "assumption") {
    node->kind = ProofNode::Kind::Assumption;
    node->label = field(j, "label").get<std::string>();
  } else if (rule == "theory") {
    node->kind = ProofNode::Kind::Theory;
  } else if (rule == "perception") {
    node->kind = ProofNode::Kind::Perception;
    node->premise = proof_node_from_json(field(j, "premise"), table);
  } else if (rule == "belief-closure") {
    node->kind = ProofNode::Kind::BeliefClosure;
    const json& premises = field(j, "premises");
    require(premises.is_array(), "'premises' must be an array");
    std::vector<ProofPtr> loaded;
    for (const auto& p : premises) loaded.push_back(proof_node_from_json(p, table));
    node->premises = std::move(loaded);
    node->derivation = proof_node_from_json(field(j, "derivation"), table);
  } else if (rule == "resolution") {
    node->kind = ProofNode::Kind::Fo;
    const json& sources = field(j, "sources");
    require(sources.is_array(), "'sources' must be an array");
    for (const auto& s : sources) {
      FoSource src;
      src.kind = source_kind_from(field(s, "kind").get<std::string>());
      if (src.kind == FoSource::Kind::Assumption) src.label = field(s, "label").get<std::string>();
      src.formula = parse_formula(field(s, "formula").get<std::string>(), table);
      node->sources.push_back(std::move(src));
    }
    const json& steps = field(j, "refutation");
    require(steps.is_array(), "'refutation' must be an array");
    for (const auto& sj : steps) {
      TraceClause step;
      const std::string kind = field(sj, "kind").get<std::string>();
      // Only the render is loaded; the checker recomputes the clause.
      step.rendered = field(sj, "clause").get<std::string>();
      if (kind == "input") {
        step.kind = TraceClause::Kind::Input;
        step.premise_index = field(sj, "premise").get<int>();
      } else if (kind == "resolve") {
        step.kind = TraceClause::Kind::Resolve;
        const json& parents = field(sj, "parents");
        const json& literals = field(sj, "literals");
        require(parents.is_array() && parents.size() == 2, "'parents' must have two entries");
        require(literals.is_array() && literals.size() == 2, "'literals' must have two entries");
        step.parent_a = parents[0].get<int>();
        step.parent_b = parents[1].get<int>();
        step.literal_a = literals[0].get<int>();
        step.literal_b = literals[1].get<int>();
      } else if (kind == "factor") {
        step.kind = TraceClause::Kind::Factor;
        step.parent_a = field(sj, "parent").get<int>();
        const json& literals = field(sj, "literals");
        require(literals.is_array() && literals.size() == 2, "'literals' must have two entries");
        step.literal_a = literals[0].get<int>();
        step.literal_b = literals[1].get<int>();
      } else {
        throw std::invalid_argument("proof: unknown step kind '" + kind + "'");
      }
      node->refutation.steps.push_back(std::move(step));
    }
  } else {
    throw std::invalid_argument("proof: unknown rule '" + rule + "'");
  }
  return node;
}

json proof_to_json(const ProofPtr& root) {
  json j;
  j["version"] = kProofFormatVersion;
  j["proof"] = proof_node_to_json(root);
  return j;
}

ProofPtr proof_from_json(const json& j, SymbolTable& table) {
  require(j.is_object(), "proof document must be an object");
  const json& version = field(j, "version");
  require(version.is_number_integer() && version.get<int>() == kProofFormatVersion,
          "unsupported proof format version");
  return proof_node_from_json(field(j, "proof"), table);
}

SymbolTable table_for(const Problem& problem) {
  SymbolTable table;
  table.constants = problem.declarations;
  return table;
}

}  // namespace mucalc
