#include "holres/tactic.hpp"

#include <memory>

#include "holres/error.hpp"

namespace holres {

Tactic rules_tac(std::vector<Rule> rules, std::size_t premise, UnifyOptions options) {
  return [rules = std::move(rules), premise, options](const Rule& goal) -> Seq<Rule> {
    if (premise >= goal.premises.size() || rules.empty()) return {};
    Seq<Rule> choices = Seq<Rule>::from_vector(rules);
    return flat_map<Rule, Rule>(choices, [goal, premise, options](const Rule& r) {
      return resolve(goal, premise, r, options);
    });
  };
}

Tactic id_tac() {
  return [](const Rule& goal) { return Seq<Rule>::single(goal); };
}

Tactic fail_tac() {
  return [](const Rule&) { return Seq<Rule>(); };
}

Tactic then(Tactic first, Tactic second) {
  return [first, second](const Rule& goal) {
    std::function<Seq<Rule>(const Rule&)> next = second;
    return flat_map<Rule, Rule>(first(goal), next);
  };
}

Tactic orelse(Tactic first, Tactic second) {
  return [first, second](const Rule& goal) -> Seq<Rule> {
    Seq<Rule> out = first(goal);
    if (!out.is_empty()) return out;
    return second(goal);
  };
}

Tactic try_tac(Tactic t) { return orelse(std::move(t), id_tac()); }

Tactic repeat(Tactic t) {
  auto self = std::make_shared<Tactic>();
  std::weak_ptr<Tactic> weak = self;
  *self = [t, weak](const Rule& goal) -> Seq<Rule> {
    Seq<Rule> step = t(goal);
    if (step.is_empty()) return Seq<Rule>::single(goal);
    auto again = weak.lock();
    std::function<Seq<Rule>(const Rule&)> rec = [again](const Rule& g) { return (*again)(g); };
    return flat_map<Rule, Rule>(step, rec);
  };
  return [self](const Rule& goal) { return (*self)(goal); };
}

namespace {

struct Frame {
  Seq<Rule> pending;
  std::size_t depth;
};

class DepthFirstSearch {
 public:
  using Expand = std::function<std::optional<Seq<Rule>>(const Rule&)>;

  // expand returns nullopt when the state is a result
  DepthFirstSearch(Rule start, Expand expand, SearchOptions options)
      : expand_(std::move(expand)), options_(options) {
    if (!options_.node_counter) options_.node_counter = std::make_shared<std::size_t>(0);
    stack_.push_back({Seq<Rule>::single(std::move(start)), 0});
  }

  std::optional<Rule> next() {
    while (!stack_.empty()) {
      Frame& top = stack_.back();
      const auto& step = top.pending.pull();
      if (!step) {
        stack_.pop_back();
        continue;
      }
      Rule state = step->first;
      std::size_t depth = top.depth;
      top.pending = step->second;

      auto children = expand_(state);
      if (!children) {
        if (depth >= options_.min_depth) return state;
        continue;
      }
      if (options_.max_depth && depth >= *options_.max_depth) {
        if (options_.depth_cutoff) *options_.depth_cutoff = true;
        continue;
      }
      std::size_t& nodes = *options_.node_counter;
      if (++nodes, options_.max_nodes && nodes > *options_.max_nodes)
        throw Error(ErrorKind::DepthExceeded,
                    "search exceeded " + std::to_string(*options_.max_nodes) + " nodes");
      stack_.push_back({*children, depth + 1});
    }
    return std::nullopt;
  }

 private:
  Expand expand_;
  SearchOptions options_;
  std::vector<Frame> stack_;
};

Seq<Rule> run_search(Rule start, DepthFirstSearch::Expand expand, SearchOptions options) {
  auto search = std::make_shared<DepthFirstSearch>(std::move(start), std::move(expand), options);
  return seq_from_generator<Rule>([search] { return search->next(); });
}

}  // namespace

Tactic depth_first(GoalPredicate satisfied, Tactic t, SearchOptions options) {
  return [satisfied, t, options](const Rule& goal) {
    DepthFirstSearch::Expand expand = [satisfied, t](const Rule& state) -> std::optional<Seq<Rule>> {
      bool done = true;
      for (const auto& p : state.premises)
        if (!satisfied(p)) {
          done = false;
          break;
        }
      if (done) return std::nullopt;
      return t(state);
    };
    return run_search(goal, expand, options);
  };
}

std::optional<std::size_t> first_undeferred(const GoalAnalyzer& analyzer, const Rule& state,
                                            std::vector<Rule>* rules) {
  for (std::size_t i = 0; i < state.premises.size(); ++i) {
    auto chosen = analyzer(state.premises[i]);
    if (!chosen.empty()) {
      if (rules) *rules = std::move(chosen);
      return i;
    }
  }
  return std::nullopt;
}

Tactic depth_rules_fun_tac(GoalAnalyzer analyzer, SearchOptions options) {
  return [analyzer, options](const Rule& goal) {
    DepthFirstSearch::Expand expand = [analyzer, options](const Rule& state) -> std::optional<Seq<Rule>> {
      std::vector<Rule> rules;
      auto index = first_undeferred(analyzer, state, &rules);
      if (!index) return std::nullopt;
      return rules_tac(std::move(rules), *index, options.unify)(state);
    };
    return run_search(goal, expand, options);
  };
}

Tactic deepening_rules_fun_tac(GoalAnalyzer analyzer, std::size_t max_depth, SearchOptions options) {
  return [analyzer, max_depth, options](const Rule& goal) {
    SearchOptions shared = options;
    if (!shared.node_counter) shared.node_counter = std::make_shared<std::size_t>(0);
    shared.depth_cutoff = std::make_shared<bool>(false);
    auto round = [analyzer, goal, shared](std::size_t d) {
      SearchOptions o = shared;
      o.max_depth = d;
      o.min_depth = d;
      return depth_rules_fun_tac(analyzer, o)(goal);
    };
    // Stop deepening once a round finishes without hitting its limit.
    auto cut = shared.depth_cutoff;
    std::size_t d = 0;
    auto rounds = seq_from_generator<Seq<Rule>>([round, cut, max_depth, d]() mutable -> std::optional<Seq<Rule>> {
      if (d > max_depth || (d > 0 && !*cut)) return std::nullopt;
      *cut = false;
      return round(d++);
    });
    return flat_map<Seq<Rule>, Rule>(rounds, [](const Seq<Rule>& r) { return r; });
  };
}

}  // namespace holres
