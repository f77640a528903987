#pragma once

#include <map>
#include <optional>

#include "holres/term.hpp"

namespace holres {

/// Finite mapping from scheme variables to terms, plus the generation
/// counter used for fresh variables and standardizing apart.
class Environment {
 public:
  Environment() = default;
  explicit Environment(int next_generation) : next_generation_(next_generation) {}

  const Term* lookup(const VarKey& key) const;
  bool bound(const VarKey& key) const { return bindings_.count(key) != 0; }
  /// The caller guarantees the binding keeps the environment idempotent.
  void bind(const VarKey& key, Term value);

  /// Fresh variable at a generation no existing term uses.
  Term fresh_var(const std::string& name, Arity arity);
  int next_generation() const noexcept { return next_generation_; }
  void reserve_generation(int at_least);

  const std::map<VarKey, Term>& bindings() const noexcept { return bindings_; }
  bool empty() const noexcept { return bindings_.empty(); }

 private:
  std::map<VarKey, Term> bindings_;
  int next_generation_ = 1;
};

/// Replaces bound variables (recursively, subscripts included). Not normalized.
Term apply_env(const Environment& env, const Term& t);
/// normalize(apply_env(env, t))
Term instantiate(const Environment& env, const Term& t);

}  // namespace holres
