#include "combine.hpp"

namespace snb::detail {

RuleState start_rule(const GrammarRule& rule) {
  RuleState s;
  s.rule = s.graph.import(rule.tuple);
  return s;
}

bool add_daughter(RuleState& s, int i, const FeatureStructure& edge) {
  auto slot = s.graph.child(s.rule, GrammarRule::daughter_feature(i));
  if (!slot) return false;
  auto e = s.graph.import(edge);
  auto m = s.graph.child(e, feat::m());
  auto lex = s.graph.child(e, feat::lex());
  if (!m || !lex) return false;
  auto items = s.graph.list_items(*lex);
  s.lex.insert(s.lex.end(), items.begin(), items.end());
  return s.graph.unify(*slot, *m);
}

namespace {

std::optional<UnifyGraph::Id> goal_node(RuleState& s, const GoalArg& arg, bool create) {
  auto d = s.graph.child(s.rule, GrammarRule::daughter_feature(arg.daughter));
  if (!d) return std::nullopt;
  return s.graph.walk(*d, arg.path, create);
}

bool run_goal(RuleState& s, const GoalCall& goal) {
  switch (goal.kind) {
    case GoalKind::kAgree: {
      auto a = goal_node(s, goal.args[0], true);
      auto b = goal_node(s, goal.args[1], true);
      return a && b && s.graph.unify(*a, *b);
    }
    case GoalKind::kRequire: {
      auto a = goal_node(s, goal.args[0], true);
      return a && s.graph.unify(*a, s.graph.new_atom(goal.args[1].constant));
    }
    case GoalKind::kProhibit: {
      auto a = goal_node(s, goal.args[0], false);
      if (!a) return true;
      auto atom = s.graph.atom(*a);
      return !atom || *atom != goal.args[1].constant;
    }
  }
  return false;
}

}  // namespace

std::optional<FeatureStructure> finish_rule(RuleState& s, const GrammarRule& rule) {
  for (const auto& goal : rule.goals)
    if (!run_goal(s, goal)) return std::nullopt;
  auto mother = s.graph.child(s.rule, GrammarRule::mother_feature());
  if (!mother) return std::nullopt;
  auto root = s.graph.new_complex();
  auto list = s.graph.make_list(s.lex);
  s.graph.set_arc(root, feat::m(), *mother);
  s.graph.set_arc(root, feat::lex(), list);
  return s.graph.extract(root);
}

FeatureStructure lexical_edge(const FeatureStructure& sign) {
  UnifyGraph g;
  auto s = g.import(sign);
  std::vector<UnifyGraph::Id> items{s};
  auto list = g.make_list(items);
  auto root = g.new_complex();
  g.set_arc(root, feat::m(), s);
  g.set_arc(root, feat::lex(), list);
  return *g.extract(root);
}

}  // namespace snb::detail
