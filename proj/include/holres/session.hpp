#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holres/logic.hpp"

namespace holres {

struct SessionOptions {
  UnifyOptions unify{64, true};
  std::size_t max_nodes = 10000;
  /// Overrides the depth limit of depth_first and of the logic's tactics.
  std::optional<std::size_t> max_depth;
  bool compress_skolem = true;
};

/// One refinement step of the goal package.
struct Step {
  Rule before;
  std::string command;
  Seq<Rule> remainder;  // unconsumed alternatives
};

/// A printed unifier: one `?x = term` per variable of the problem.
struct SolvedUnifier {
  std::vector<std::pair<std::string, std::string>> bindings;
  std::vector<std::string> constraints;  // flex-flex pairs closed by the trivial unifier
};

struct SolvePage {
  std::vector<SolvedUnifier> unifiers;
  bool more = false;
};

/// Interactive backwards proof over one logic.
class Session {
 public:
  explicit Session(std::shared_ptr<const Logic> logic, SessionOptions options = {});

  const Logic& logic() const { return *logic_; }
  const SessionOptions& options() const { return options_; }

  void new_goal(std::string_view text);
  void new_goal(const Term& prop, std::string text);
  bool has_goal() const { return state_.has_value(); }
  const Rule& state() const;
  const std::string& goal_text() const { return goal_text_; }
  const std::vector<Step>& history() const { return history_; }
  /// Whether step k (1-based, as for backtrack) has another alternative;
  /// forces one element.
  bool has_alternative(std::size_t k);

  /// Runs a tactic expression; the first result becomes the state.
  void apply(std::string_view tactic_text);
  /// Re-runs step k (1-based, oldest first) with its next alternative and
  /// drops every later step.
  void backtrack(std::size_t k);
  void undo();
  /// The finished theorem scheme: flex-flex constraints closed, variables
  /// renamed to generation 0.
  Rule qed();

  /// Numbered subgoals; parameters compressed per the options.
  std::string show() const;
  /// The Skolem legend for the current state.
  SkolemLegend legend() const;

  /// Unifier count of each named rule against premise `goal` (0-based),
  /// capped at `cap`.
  std::vector<std::pair<std::string, std::size_t>> applicable_rules(std::size_t goal, std::size_t cap = 5) const;

  Tactic parse_tactic(std::string_view text) const;

  /// Unifiers of lhs =?= rhs, `count` from `offset`. Undeclared identifiers are
  /// constants of inferred arity.
  SolvePage solve(std::string_view lhs, std::string_view rhs, std::size_t offset, std::size_t count);

  /// Script text: the goal line, then every command in order.
  std::string script() const;
  void save_script(const std::string& path) const;
  /// Replays a script; a failing command raises ReplayMismatch.
  static Session replay(std::shared_ptr<const Logic> logic, std::string_view script, SessionOptions options = {});
  static Session replay_file(std::shared_ptr<const Logic> logic, const std::string& path,
                             SessionOptions options = {});

  /// Executes one script line (`apply ...`, `backtrack k`, `undo`, `qed`).
  void run_command(std::string_view line);

 private:
  SearchOptions search_options() const;

  std::shared_ptr<const Logic> logic_;
  SessionOptions options_;
  std::optional<Rule> state_;
  std::string goal_text_;
  std::vector<Step> history_;
  std::vector<std::string> log_;
  struct SolveCache {
    std::string lhs, rhs;
    std::vector<Term> vars;
    Seq<Unifier> stream;
  };
  std::optional<SolveCache> solve_cache_;
};

/// Formats a unifier over the given variables.
SolvedUnifier describe_unifier(const LogicSignature& sig, const Unifier& u, const std::vector<Term>& vars);

std::string read_text_file(const std::string& path);

}  // namespace holres
