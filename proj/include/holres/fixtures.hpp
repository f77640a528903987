#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holres/logic.hpp"

namespace holres {

std::string_view fol_rules_text();
std::string_view ctt_rules_text();

/// Natural-deduction first-order logic. Tactics: auto (iterative deepening
/// over all rules), intro (introduction and assumption rules only).
Logic fol_fixture();
/// Constructive Type Theory fragment. Tactics: type_check, depth_intr.
Logic ctt_fixture();

/// No constants and the single atomic arity i; for unification experiments.
Logic pure_logic();

std::vector<std::string> builtin_logic_names();
std::optional<Logic> builtin_logic(std::string_view name);

/// Rule choice for FOL goals `G |- F`: assumptions, then the introduction
/// rule for F's connective, then (if `elims`) every elimination rule. A goal
/// with a flexible formula is only tried against the assumptions.
GoalAnalyzer fol_analyzer(const RuleSet& rules, bool elims);

/// Type checking: `A type` is deferred while A is flexible; `a : A` is
/// deferred while a is flexible, otherwise all rules are candidates.
GoalAnalyzer ctt_type_check_analyzer(const RuleSet& rules);
/// Introduction only: `a : A` is deferred while both a and A are flexible;
/// elimination rules are never used.
GoalAnalyzer ctt_depth_intr_analyzer(const RuleSet& rules);

/// Default depth limit of the FOL auto tactic.
inline constexpr std::size_t kFolAutoDepth = 12;

}  // namespace holres
