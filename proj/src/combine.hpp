#pragma once

#include <optional>
#include <vector>

#include "snb/lingware.hpp"
#include "snb/sign.hpp"
#include "snb/unify.hpp"

namespace snb::detail {

/// Partial application of a rule: daughters are added left to right, each
/// one unified into the rule at once so failures prune early.
struct RuleState {
  UnifyGraph graph;
  UnifyGraph::Id rule = 0;
  std::vector<UnifyGraph::Id> lex;
};

RuleState start_rule(const GrammarRule& rule);
bool add_daughter(RuleState& state, int i, const FeatureStructure& edge);
/// Runs the goals and builds `(m ...) (lex ...)`.
std::optional<FeatureStructure> finish_rule(RuleState& state, const GrammarRule& rule);

FeatureStructure lexical_edge(const FeatureStructure& sign);

}  // namespace snb::detail
