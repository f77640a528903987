#include "holres/env.hpp"

#include <algorithm>

namespace holres {

const Term* Environment::lookup(const VarKey& key) const {
  auto it = bindings_.find(key);
  return it == bindings_.end() ? nullptr : &it->second;
}

void Environment::bind(const VarKey& key, Term value) { bindings_.insert_or_assign(key, std::move(value)); }

Term Environment::fresh_var(const std::string& name, Arity arity) {
  return Term::var(name, next_generation_++, std::move(arity));
}

void Environment::reserve_generation(int at_least) { next_generation_ = std::max(next_generation_, at_least); }

Term apply_env(const Environment& env, const Term& t) {
  if (env.empty()) return t;
  switch (t.kind()) {
    case TermKind::Var: {
      const Term* v = env.lookup(t.var_key());
      return v ? apply_env(env, *v) : t;
    }
    case TermKind::Abs: {
      Term b = apply_env(env, t.body());
      return b.same_node(t.body()) ? t : Term::abs(t.name(), t.arity(), b);
    }
    case TermKind::App: {
      Term f = apply_env(env, t.fun());
      Term a = apply_env(env, t.arg());
      return (f.same_node(t.fun()) && a.same_node(t.arg())) ? t : Term::app(f, a);
    }
    case TermKind::Param: {
      std::vector<Term> subs;
      bool changed = false;
      for (const auto& s : t.subscripts()) {
        subs.push_back(apply_env(env, s));
        changed = changed || !subs.back().same_node(s);
      }
      return changed ? Term::param(t.name(), std::move(subs), t.arity()) : t;
    }
    default:
      return t;
  }
}

Term instantiate(const Environment& env, const Term& t) { return normalize(apply_env(env, t)); }

}  // namespace holres
