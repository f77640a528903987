#include <set>

#include "holres/fixtures.hpp"

namespace holres {

namespace {

// Splits `H |- J`; nullopt for anything else.
std::optional<std::pair<Term, Term>> sequent(const Term& goal) {
  auto [head, args] = strip_comb(goal);
  if (!head.is_const() || head.name() != "|-" || args.size() != 2) return std::nullopt;
  return std::make_pair(args[0], args[1]);
}

bool flexible(const Term& t) {
  Term h = t;
  while (h.is_abs()) h = h.body();
  return strip_comb(h).first.is_var();
}

bool has_unknown_formula(const Term& t) {
  for (const auto& v : collect_vars(t))
    if (v.arity().spine_result().name() == "form") return true;
  return false;
}

void constants_of(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Const: out.insert(t.name()); break;
    case TermKind::Abs: constants_of(t.body(), out); break;
    case TermKind::App:
      constants_of(t.fun(), out);
      constants_of(t.arg(), out);
      break;
    default: break;
  }
}

std::string head_name(const Term& t) {
  Term h = strip_comb(t).first;
  return h.is_const() ? h.name() : std::string();
}

std::vector<Rule> pick(const RuleSet& rules, std::initializer_list<const char*> names) {
  std::vector<Rule> out;
  for (const char* n : names)
    if (const Rule* r = rules.find(n)) out.push_back(*r);
  return out;
}

}  // namespace

GoalAnalyzer fol_analyzer(const RuleSet& rules, bool elims) {
  static const std::map<std::string, const char*> intro{
      {"conj", "conjI"}, {"disj", "disjI1"}, {"imp", "impI"}, {"Pi", "allI"}, {"Sigma", "exI"}};
  // Elimination rules keyed by the connective they take apart.
  static const std::vector<std::pair<const char*, const char*>> elim_of{
      {"conj", "conjE1"}, {"conj", "conjE2"}, {"imp", "mp"}, {"Pi", "allE"}, {"Sigma", "exE"}};
  std::vector<Rule> assumption = pick(rules, {"asm_head", "asm_tail"});
  std::map<std::string, Rule> intro_rules;
  for (const auto& [c, name] : intro)
    if (const Rule* r = rules.find(name)) intro_rules.emplace(c, *r);
  std::vector<std::pair<std::string, Rule>> elim;
  if (elims)
    for (const auto& [c, name] : elim_of)
      if (const Rule* r = rules.find(name)) elim.emplace_back(c, *r);
  return [assumption, intro_rules, elim](const Term& goal) -> std::vector<Rule> {
    auto s = sequent(goal);
    if (!s) return {};
    if (flexible(s->second)) return {};
    std::vector<Rule> out = assumption;
    // An unknown subformula came from an elimination step; introducing
    // around it only re-creates goals already on the path.
    if (!has_unknown_formula(s->second)) {
      if (auto it = intro_rules.find(head_name(s->second)); it != intro_rules.end()) out.push_back(it->second);
    }
    // In a normal proof the major premise of an elimination is a
    // subformula of some hypothesis.
    std::set<std::string> in_hyps;
    bool unknown_hyps = has_unknown_formula(s->first) || flexible(s->first);
    if (!unknown_hyps) constants_of(s->first, in_hyps);
    for (const auto& [c, r] : elim)
      if (unknown_hyps || in_hyps.count(c)) out.push_back(r);
    return out;
  };
}

namespace {

struct CttGoal {
  enum Kind { Type, Elem, Other } kind = Other;
  Term subject;  // A in `A type`, a in `a : A`
  Term type;     // A in `a : A`
};

CttGoal ctt_goal(const Term& goal) {
  CttGoal g;
  auto s = sequent(goal);
  if (!s) return g;
  auto [head, args] = strip_comb(s->second);
  if (!head.is_const()) return g;
  if (head.name() == "istype" && args.size() == 1) {
    g.kind = CttGoal::Type;
    g.subject = args[0];
  } else if (head.name() == "elem" && args.size() == 2) {
    g.kind = CttGoal::Elem;
    g.subject = args[0];
    g.type = args[1];
  }
  return g;
}

const std::set<std::string> kCttElims{"NatE", "ProdE", "SumE", "TimesE", "PlusE"};

GoalAnalyzer ctt_analyzer(const RuleSet& rules, bool type_check) {
  std::vector<Rule> formation, element;
  for (const auto& r : rules.all()) {
    CttGoal c = ctt_goal(r.rule.conclusion);
    if (c.kind == CttGoal::Type) formation.push_back(r.rule);
    else if (c.kind == CttGoal::Elem && (type_check || !kCttElims.count(r.name))) element.push_back(r.rule);
  }
  return [formation, element, type_check](const Term& goal) -> std::vector<Rule> {
    CttGoal g = ctt_goal(goal);
    switch (g.kind) {
      case CttGoal::Type:
        return flexible(g.subject) ? std::vector<Rule>{} : formation;
      case CttGoal::Elem:
        if (type_check ? flexible(g.subject) : flexible(g.subject) && flexible(g.type)) return {};
        return element;
      case CttGoal::Other:
        return {};
    }
    return {};
  };
}

}  // namespace

GoalAnalyzer ctt_type_check_analyzer(const RuleSet& rules) { return ctt_analyzer(rules, true); }
GoalAnalyzer ctt_depth_intr_analyzer(const RuleSet& rules) { return ctt_analyzer(rules, false); }

namespace {

// Goals left flexible by the analyzer are closed from the hypotheses at the
// end; only complete proofs are reported.
Tactic fol_search(const RuleSet& rules, bool elims, SearchOptions o) {
  if (!o.node_counter) o.node_counter = std::make_shared<std::size_t>(0);
  std::size_t depth = o.max_depth.value_or(kFolAutoDepth);
  Tactic main = deepening_rules_fun_tac(fol_analyzer(rules, elims), depth, o);
  std::vector<Rule> assumption = pick(rules, {"asm_head", "asm_tail"});
  SearchOptions close = o;
  close.max_depth = depth;
  Tactic finish = depth_first([](const Term&) { return false; }, rules_tac(assumption, 0, o.unify), close);
  return then(main, finish);
}

}  // namespace

Logic fol_fixture() {
  Logic l = load_logic(fol_rules_text());
  RuleSet rules = l.rules;
  l.tactics["auto"] = [rules](const SearchOptions& o) { return fol_search(rules, true, o); };
  l.tactics["intro"] = [rules](const SearchOptions& o) { return fol_search(rules, false, o); };
  return l;
}

Logic ctt_fixture() {
  Logic l = load_logic(ctt_rules_text());
  RuleSet rules = l.rules;
  l.tactics["type_check"] = [rules](const SearchOptions& o) {
    return depth_rules_fun_tac(ctt_type_check_analyzer(rules), o);
  };
  l.tactics["depth_intr"] = [rules](const SearchOptions& o) {
    return depth_rules_fun_tac(ctt_depth_intr_analyzer(rules), o);
  };
  return l;
}

Logic pure_logic() {
  Logic l;
  l.name = "pure";
  l.signature.declare_arity("i");
  return l;
}

std::vector<std::string> builtin_logic_names() { return {"fol", "ctt", "pure"}; }

std::optional<Logic> builtin_logic(std::string_view name) {
  if (name == "fol") return fol_fixture();
  if (name == "ctt") return ctt_fixture();
  if (name == "pure") return pure_logic();
  return std::nullopt;
}

}  // namespace holres
