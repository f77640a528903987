#include <functional>
#include "holres/rule.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "holres/error.hpp"

namespace holres {

Arity judgement_arity() {
  static const Arity prop = Arity::atomic("prop");
  return prop;
}

namespace {

void check_judgement(const Term& t, const char* what) {
  Arity a;
  try {
    a = arity_of(t);
  } catch (const Error& e) {
    throw Error(ErrorKind::BadArity, std::string(what) + " is ill-aritied: " + e.what());
  }
  if (a != judgement_arity())
    throw Error(ErrorKind::BadArity, std::string(what) + " has arity " + a.to_string() + ", expected prop");
}

template <class F>
Rule map_terms(const Rule& r, F f) {
  Rule out;
  for (const auto& p : r.premises) out.premises.push_back(f(p));
  out.conclusion = f(r.conclusion);
  for (const auto& ff : r.flexflex) out.flexflex.push_back({ff.binders, f(ff.lhs), f(ff.rhs)});
  return out;
}

}  // namespace

Rule mk_rule(std::vector<Term> premises, Term conclusion) {
  for (const auto& p : premises) check_judgement(p, "premise");
  check_judgement(conclusion, "conclusion");
  Rule r;
  for (auto& p : premises) r.premises.push_back(normalize(p));
  r.conclusion = normalize(conclusion);
  // every occurrence, not just the first per variable
  std::map<std::string, Arity> seen;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    switch (t.kind()) {
      case TermKind::Var: {
        auto [it, inserted] = seen.emplace(t.name(), t.arity());
        if (!inserted && it->second != t.arity())
          throw Error(ErrorKind::InconsistentVar, "scheme variable ?" + t.name() + " used at arities " +
                                                      it->second.to_string() + " and " + t.arity().to_string());
        break;
      }
      case TermKind::Abs: walk(t.body()); break;
      case TermKind::App: walk(t.fun()); walk(t.arg()); break;
      case TermKind::Param:
        for (const auto& x : t.subscripts()) walk(x);
        break;
      default: break;
    }
  };
  for (const auto& p : r.premises) walk(p);
  walk(r.conclusion);
  return r;
}

int max_generation(const Rule& r) {
  int m = max_generation(r.conclusion);
  for (const auto& p : r.premises) m = std::max(m, max_generation(p));
  for (const auto& ff : r.flexflex) m = std::max({m, max_generation(ff.lhs), max_generation(ff.rhs)});
  return m;
}

std::vector<Term> collect_vars(const Rule& r) {
  std::vector<Term> out;
  for (const auto& p : r.premises) collect_vars(p, out);
  collect_vars(r.conclusion, out);
  for (const auto& ff : r.flexflex) {
    collect_vars(ff.lhs, out);
    collect_vars(ff.rhs, out);
  }
  return out;
}

Rule standardize(const Rule& r, int generation) {
  return map_terms(r, [&](const Term& t) { return standardize(t, generation); });
}

Rule rename_to_generation_zero(const Rule& r) {
  auto vars = collect_vars(r);
  if (std::all_of(vars.begin(), vars.end(), [](const Term& v) { return v.generation() == 0; })) return r;
  std::set<std::string> taken;
  for (const auto& v : vars)
    if (v.generation() == 0) taken.insert(v.name());
  Environment env;
  for (const auto& v : vars) {
    if (v.generation() == 0) continue;
    std::string name = v.name();
    for (int k = 1; taken.count(name); ++k) name = v.name() + std::to_string(k);
    taken.insert(name);
    env.bind(v.var_key(), Term::var(name, 0, v.arity()));
  }
  return map_terms(r, [&](const Term& t) { return apply_env(env, t); });
}

Rule instantiate(const Environment& env, const Rule& r) {
  Rule out;
  for (const auto& p : r.premises) out.premises.push_back(instantiate(env, p));
  out.conclusion = instantiate(env, r.conclusion);
  for (const auto& ff : r.flexflex) out.flexflex.push_back(prepare_pair(env, ff));
  return out;
}

Seq<Rule> resolve(const Rule& goal, std::size_t index, const Rule& r, UnifyOptions options) {
  if (index >= goal.premises.size())
    throw Error(ErrorKind::IndexOutOfRange, "no premise " + std::to_string(index + 1) + " (goal has " +
                                                std::to_string(goal.premises.size()) + ")");
  const int generation = std::max(max_generation(goal), 0) + 1;
  Rule fresh = standardize(rename_to_generation_zero(r), generation);
  std::vector<DisagreementPair> pairs{{{}, fresh.conclusion, goal.premises[index]}};
  pairs.insert(pairs.end(), goal.flexflex.begin(), goal.flexflex.end());
  pairs.insert(pairs.end(), fresh.flexflex.begin(), fresh.flexflex.end());
  Environment env(generation + 1);

  return map_seq<Unifier, Rule>(unify_pairs(std::move(pairs), env, options), [goal, index, fresh](const Unifier& u) {
    Rule out;
    for (std::size_t k = 0; k < goal.premises.size(); ++k) {
      if (k == index) {
        for (const auto& p : fresh.premises) out.premises.push_back(instantiate(u.env, p));
      } else {
        out.premises.push_back(instantiate(u.env, goal.premises[k]));
      }
    }
    out.conclusion = instantiate(u.env, goal.conclusion);
    out.flexflex = u.flexflex;
    return out;
  });
}

Seq<Rule> forward_resolve(const Rule& r, const std::vector<Rule>& facts, UnifyOptions options) {
  if (facts.size() > r.premises.size())
    throw Error(ErrorKind::IndexOutOfRange, "more facts than premises");
  Seq<Rule> current = Seq<Rule>::single(r);
  for (const auto& fact : facts) {
    current = flat_map<Rule, Rule>(current, [fact, options](const Rule& acc) {
      return resolve(acc, 0, fact, options);
    });
  }
  return current;
}

bool derived_rule_check(const Rule& r, const Rule& general) {
  if (r.premises.size() != general.premises.size()) return false;
  // r's variables are frozen into constants no parsed name can spell
  Environment freeze;
  for (const auto& v : collect_vars(r))
    freeze.bind(v.var_key(),
                Term::constant("frozen?" + v.name() + "." + std::to_string(v.generation()), v.arity()));
  Rule fixed = instantiate(freeze, r);
  Rule pattern = standardize(rename_to_generation_zero(general), 1);
  std::vector<DisagreementPair> pairs{{{}, pattern.conclusion, fixed.conclusion}};
  for (std::size_t i = 0; i < r.premises.size(); ++i) pairs.push_back({{}, pattern.premises[i], fixed.premises[i]});
  UnifyOptions options;
  options.max_depth = 16;
  options.throw_on_depth = false;
  return !unify_pairs(std::move(pairs), Environment(2), options).is_empty();
}

}  // namespace holres
