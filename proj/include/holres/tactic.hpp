#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "holres/rule.hpp"
#include "holres/seq.hpp"

namespace holres {

/// A tactic maps a goal tree to a lazy stream of refined goal trees.
using Tactic = std::function<Seq<Rule>(const Rule&)>;
/// Picks the rules appropriate for one subgoal; an empty list defers it.
using GoalAnalyzer = std::function<std::vector<Rule>(const Term&)>;
using GoalPredicate = std::function<bool(const Term&)>;

struct SearchOptions {
  /// Search nodes expanded before DepthExceeded is thrown.
  std::optional<std::size_t> max_nodes;
  /// Refinement steps along one branch; deeper states are pruned silently.
  std::optional<std::size_t> max_depth;
  /// Results found fewer than this many steps from the start are dropped.
  std::size_t min_depth = 0;
  /// Shared node count, so that several searches draw on one budget.
  std::shared_ptr<std::size_t> node_counter;
  /// Set when some state was pruned by max_depth.
  std::shared_ptr<bool> depth_cutoff;
  UnifyOptions unify;
};

Tactic rules_tac(std::vector<Rule> rules, std::size_t premise, UnifyOptions options = {});
Tactic id_tac();
Tactic fail_tac();
Tactic then(Tactic first, Tactic second);
Tactic orelse(Tactic first, Tactic second);
Tactic try_tac(Tactic t);
Tactic repeat(Tactic t);

/// Depth-first search over applications of t until every premise satisfies
/// the predicate. A node is one application of t.
Tactic depth_first(GoalPredicate satisfied, Tactic t, SearchOptions options = {});

/// Depth-first search expanding the first premise the analyzer does not
/// defer; states whose premises are all deferred are results.
Tactic depth_rules_fun_tac(GoalAnalyzer analyzer, SearchOptions options = {});

/// depth_rules_fun_tac run with depth limits 0, 1, ..., max_depth; each
/// result is reported once, at the limit equal to its depth. max_nodes is a
/// budget over all rounds.
Tactic deepening_rules_fun_tac(GoalAnalyzer analyzer, std::size_t max_depth, SearchOptions options = {});

/// Index of the first premise the analyzer does not defer, if any.
std::optional<std::size_t> first_undeferred(const GoalAnalyzer& analyzer, const Rule& state,
                                            std::vector<Rule>* rules = nullptr);

}  // namespace holres
