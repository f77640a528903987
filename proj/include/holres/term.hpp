#pragma once

#include <compare>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "holres/arity.hpp"

namespace holres {

enum class TermKind { Const, Var, Bound, Abs, App, Param };

/// Identity of a scheme variable: a (name, generation) pair.
struct VarKey {
  std::string name;
  int generation = 0;

  friend auto operator<=>(const VarKey&, const VarKey&) = default;
  friend bool operator==(const VarKey&, const VarKey&) = default;
};

/// A bound-variable slot: printing hint plus arity.
struct Binder {
  std::string hint;
  Arity arity;
};

/// λ-expression with de Bruijn indices for bound variables.
///
/// Terms are immutable and share structure; copying a Term copies a pointer.
/// Param is a Skolem parameter whose identity includes its subscript
/// expressions. Subscripts are always closed (no loose Bound indices).
class Term {
 public:
  Term() = default;

  static Term constant(std::string name, Arity arity);
  static Term var(std::string name, int generation, Arity arity);
  static Term bound(int index);
  static Term abs(std::string hint, Arity argument, Term body);
  static Term app(Term fun, Term arg);
  static Term apps(Term head, std::span<const Term> args);
  static Term param(std::string base, std::vector<Term> subscripts, Arity arity);

  bool valid() const noexcept { return node_ != nullptr; }
  TermKind kind() const;
  bool is_const() const;
  bool is_var() const;
  bool is_bound() const;
  bool is_abs() const;
  bool is_app() const;
  bool is_param() const;

  /// Constant name, variable name, abstraction hint or parameter base.
  const std::string& name() const;
  int generation() const;
  int index() const;
  /// Declared arity for Const/Var/Param; bound-variable arity for Abs.
  const Arity& arity() const;
  const Term& body() const;
  const Term& fun() const;
  const Term& arg() const;
  const std::vector<Term>& subscripts() const;

  VarKey var_key() const;
  bool same_node(const Term& other) const noexcept { return node_ == other.node_; }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  TermKind kind;
  std::string name;
  int number = 0;
  Arity arity;
  Term first;
  Term second;
  std::vector<Term> subscripts;
};

inline TermKind Term::kind() const { return node_->kind; }
inline bool Term::is_const() const { return kind() == TermKind::Const; }
inline bool Term::is_var() const { return kind() == TermKind::Var; }
inline bool Term::is_bound() const { return kind() == TermKind::Bound; }
inline bool Term::is_abs() const { return kind() == TermKind::Abs; }
inline bool Term::is_app() const { return kind() == TermKind::App; }
inline bool Term::is_param() const { return kind() == TermKind::Param; }
inline const std::string& Term::name() const { return node_->name; }
inline int Term::generation() const { return node_->number; }
inline int Term::index() const { return node_->number; }
inline const Arity& Term::arity() const { return node_->arity; }
inline const Term& Term::body() const { return node_->first; }
inline const Term& Term::fun() const { return node_->first; }
inline const Term& Term::arg() const { return node_->second; }
inline const std::vector<Term>& Term::subscripts() const { return node_->subscripts; }
inline VarKey Term::var_key() const { return {name(), generation()}; }

struct HeadNormal {
  std::vector<Binder> binders;  // outermost first
  Term head;
  std::vector<Term> args;
};

/// Arity of t; binders gives the arity of Bound 0, Bound 1, ... (innermost first).
/// Throws Error(IllAritied).
Arity arity_of(const Term& t, std::span<const Arity> binders = {});

/// Splits an application spine into its head and arguments.
std::pair<Term, std::vector<Term>> strip_comb(const Term& t);

Term shift(const Term& t, int delta, int cutoff = 0);
Term beta_contract(const Term& abs, const Term& arg);
Term normalize(const Term& t);
HeadNormal head_normal(const Term& t);

/// η-long form of a β-normal term. binders as for arity_of.
Term eta_expand(const Term& t, std::span<const Arity> binders = {});

bool aconv(const Term& t, const Term& u);

bool has_loose_bound(const Term& t, int depth = 0);
/// Largest generation of any scheme variable in t, or -1.
int max_generation(const Term& t);
/// Distinct scheme variables in order of first occurrence (subscripts included).
std::vector<Term> collect_vars(const Term& t);
void collect_vars(const Term& t, std::vector<Term>& out);
bool occurs(const VarKey& v, const Term& t);
/// Moves every scheme variable to the given generation.
Term standardize(const Term& t, int generation);
/// True iff some Param inside t has itself among its own subscripts.
bool has_cyclic_param(const Term& t);

}  // namespace holres
