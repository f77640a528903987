// Shared helpers for the test suites. The βη oracle and the generators are
// written against the public Term accessors only, independently of the
// library's normalizer.
#pragma once

#include <cctype>
#include <functional>
#include <optional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "holres/fixtures.hpp"
#include "holres/logic.hpp"
#include "holres/unify.hpp"

namespace testsupport {

using namespace holres;

// ---------------------------------------------------------------------------
// Independent βη oracle on its own tree type.

struct OTerm;
using OPtr = std::shared_ptr<const OTerm>;
struct OTerm {
  enum Kind { Atom, Bound, Lam, App } kind;
  std::string atom;  // constant name, ?var.gen or param text
  int index = 0;
  OPtr a, b;
};

inline OPtr o_atom(std::string s) { return std::make_shared<const OTerm>(OTerm{OTerm::Atom, std::move(s), 0, {}, {}}); }
inline OPtr o_bound(int i) { return std::make_shared<const OTerm>(OTerm{OTerm::Bound, {}, i, {}, {}}); }
inline OPtr o_lam(OPtr body) { return std::make_shared<const OTerm>(OTerm{OTerm::Lam, {}, 0, std::move(body), {}}); }
inline OPtr o_app(OPtr f, OPtr x) {
  return std::make_shared<const OTerm>(OTerm{OTerm::App, {}, 0, std::move(f), std::move(x)});
}

std::string o_show(const OPtr& t);
OPtr o_normal(const OPtr& t);

inline OPtr from_term(const Term& t) {
  switch (t.kind()) {
    case TermKind::Const: return o_atom(t.name());
    case TermKind::Var: return o_atom("?" + t.name() + "." + std::to_string(t.generation()));
    case TermKind::Bound: return o_bound(t.index());
    case TermKind::Abs: return o_lam(from_term(t.body()));
    case TermKind::App: return o_app(from_term(t.fun()), from_term(t.arg()));
    case TermKind::Param: {
      // Subscripts are closed; compare them by their own normal forms.
      std::string s = t.name() + "[";
      for (const auto& x : t.subscripts()) s += o_show(o_normal(from_term(x))) + ";";
      return o_atom(s + "]");
    }
  }
  return nullptr;
}

inline OPtr o_shift(const OPtr& t, int d, int cutoff = 0) {
  switch (t->kind) {
    case OTerm::Atom: return t;
    case OTerm::Bound: return t->index >= cutoff ? o_bound(t->index + d) : t;
    case OTerm::Lam: return o_lam(o_shift(t->a, d, cutoff + 1));
    case OTerm::App: return o_app(o_shift(t->a, d, cutoff), o_shift(t->b, d, cutoff));
  }
  return t;
}

// body[0 := s], lowering the other loose indices
inline OPtr o_subst(const OPtr& body, const OPtr& s, int depth = 0) {
  switch (body->kind) {
    case OTerm::Atom: return body;
    case OTerm::Bound:
      if (body->index == depth) return o_shift(s, depth);
      return body->index > depth ? o_bound(body->index - 1) : body;
    case OTerm::Lam: return o_lam(o_subst(body->a, s, depth + 1));
    case OTerm::App: return o_app(o_subst(body->a, s, depth), o_subst(body->b, s, depth));
  }
  return body;
}

inline bool o_free(const OPtr& t, int i) {
  switch (t->kind) {
    case OTerm::Atom: return false;
    case OTerm::Bound: return t->index == i;
    case OTerm::Lam: return o_free(t->a, i + 1);
    case OTerm::App: return o_free(t->a, i) || o_free(t->b, i);
  }
  return false;
}

// β-normal, then η-contracted
inline OPtr o_normal(const OPtr& t) {
  switch (t->kind) {
    case OTerm::Atom:
    case OTerm::Bound: return t;
    case OTerm::Lam: {
      OPtr body = o_normal(t->a);
      if (body->kind == OTerm::App && body->b->kind == OTerm::Bound && body->b->index == 0 && !o_free(body->a, 0))
        return o_shift(body->a, -1, 0);
      return o_lam(body);
    }
    case OTerm::App: {
      OPtr f = o_normal(t->a);
      OPtr x = o_normal(t->b);
      if (f->kind == OTerm::Lam) return o_normal(o_subst(f->a, x));
      return o_app(f, x);
    }
  }
  return t;
}

inline std::string o_show(const OPtr& t) {
  switch (t->kind) {
    case OTerm::Atom: return t->atom;
    case OTerm::Bound: return "#" + std::to_string(t->index);
    case OTerm::Lam: return "(\\" + o_show(t->a) + ")";
    case OTerm::App: return "(" + o_show(t->a) + " " + o_show(t->b) + ")";
  }
  return "";
}

/// βη-equality by the independent oracle.
inline bool oracle_equal(const Term& a, const Term& b) {
  return o_show(o_normal(from_term(a))) == o_show(o_normal(from_term(b)));
}

/// Applies a closed unifier to t, resolving bindings by repeated lookup,
/// without the library's apply_env.
inline Term substitute(const Environment& env, const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: {
      const Term* v = env.lookup(t.var_key());
      return v ? substitute(env, *v) : t;
    }
    case TermKind::Abs: return Term::abs(t.name(), t.arity(), substitute(env, t.body()));
    case TermKind::App: return Term::app(substitute(env, t.fun()), substitute(env, t.arg()));
    case TermKind::Param: {
      std::vector<Term> subs;
      for (const auto& s : t.subscripts()) subs.push_back(substitute(env, s));
      return Term::param(t.name(), subs, t.arity());
    }
    default: return t;
  }
}

/// The unifier closed by the trivial flex-flex solution solves t =?= u.
inline bool solves(const Unifier& u, const Term& t, const Term& v) {
  Environment env = close_unifier(u);
  return oracle_equal(substitute(env, t), substitute(env, v));
}

// ---------------------------------------------------------------------------
// Canonical text of a unifier restricted to the problem variables; fresh
// variables (generation > 0) are renamed by first occurrence, so unifiers
// differing only in fresh names compare equal.

inline std::string canonical(const Unifier& u, const std::vector<Term>& vars) {
  Environment env = close_unifier(u);
  std::map<VarKey, std::string> names;
  std::function<std::string(const OPtr&)> rename;
  std::string out;
  for (const auto& v : vars) {
    OPtr t = o_normal(from_term(substitute(env, v)));
    std::string s = o_show(t);
    // rename ?name.gen with gen > 0 by order of appearance
    std::string r;
    for (std::size_t i = 0; i < s.size();) {
      if (s[i] == '?') {
        std::size_t j = i + 1;
        while (j < s.size() && s[j] != '.') ++j;
        std::size_t k = j + 1;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        std::string name = s.substr(i, j - i);
        int gen = std::stoi(s.substr(j + 1, k - j - 1));
        if (gen > 0) {
          VarKey key{name, gen};
          if (!names.count(key)) names[key] = "?_" + std::to_string(names.size());
          r += names[key];
        } else {
          r += s.substr(i, k - i);
        }
        i = k;
      } else {
        r += s[i++];
      }
    }
    out += r + " ; ";
  }
  return out;
}

/// Deduplicated canonical unifiers of t =?= u (at most `limit` raw results).
inline std::vector<std::string> distinct_unifiers(const Term& t, const Term& u, std::size_t limit = 200,
                                                  UnifyOptions options = {32, false}) {
  std::vector<Term> vars = collect_vars(t);
  collect_vars(u, vars);
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& un : take(unify(t, u, Environment(), options), limit)) {
    std::string c = canonical(un, vars);
    if (seen.insert(c).second) out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------

inline Term pure(const std::string& text) {
  static const Logic logic = pure_logic();
  ParseOptions o;
  o.auto_constants = true;
  return parse_term(logic.signature, text, std::nullopt, o);
}

/// Both sides parsed together so that shared variables agree.
inline std::pair<Term, Term> pure_pair(const std::string& lhs, const std::string& rhs) {
  static const Logic logic = pure_logic();
  ParseOptions o;
  o.auto_constants = true;
  o.same_arity = true;
  auto ts = parse_terms(logic.signature, {lhs, rhs}, std::nullopt, o);
  return {ts[0], ts[1]};
}

// ---------------------------------------------------------------------------
// Random well-aritied terms whose arities the parser can infer from context:
// abstractions only as arguments of constants (the constant fixes the binder
// arity), scheme variables only at heads, applied to rigid arguments.

class TermGen {
 public:
  TermGen(const LogicSignature& sig, unsigned seed) : sig_(sig), rng_(seed) {
    for (const auto& [name, a] : sig.constants) consts_.emplace_back(name, a);
    for (const auto& name : sig.atomic_arities) atoms_.push_back(name);
  }

  Term term(const Arity& a, int depth) {
    std::vector<Arity> ctx;
    return gen(a, depth, ctx, true);
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  // A term of atomic arity a whose head is rigid (constant, bound or param).
  std::optional<Term> rigid(const Arity& a, int depth, std::vector<Arity>& ctx) {
    std::vector<std::function<std::optional<Term>()>> options;
    for (int i = 0; i < static_cast<int>(ctx.size()); ++i) {
      const Arity& b = ctx[ctx.size() - 1 - i];
      if (b.spine_result() == a && (b.is_atomic() || depth > 0))
        options.push_back([this, i, b, depth, &ctx]() -> std::optional<Term> {
          std::vector<Term> args;
          for (const auto& x : b.spine_arguments()) args.push_back(gen(x, depth - 1, ctx, false));
          return Term::apps(Term::bound(i), args);
        });
    }
    for (const auto& [name, c] : consts_) {
      if (c.spine_result() != a || (c.is_fun() && depth <= 0)) continue;
      options.push_back([this, name = name, c = c, depth, &ctx]() -> std::optional<Term> {
        std::vector<Term> args;
        for (const auto& x : c.spine_arguments()) args.push_back(gen(x, depth - 1, ctx, true));
        return Term::apps(Term::constant(name, c), args);
      });
    }
    for (const auto& [base, pa] : sig_.skolem_bases) {
      if (pa != a || depth <= 0) continue;
      options.push_back([this, base = base, pa = pa, depth]() -> std::optional<Term> {
        std::vector<Arity> empty;
        std::vector<Term> subs;
        int n = 1 + pick(2);
        for (int k = 0; k < n; ++k) {
          const std::string& at = atoms_[pick(static_cast<int>(atoms_.size()))];
          auto s = rigid(Arity::atomic(at), depth - 1, empty);
          if (s) subs.push_back(*s);
        }
        if (subs.empty()) return std::nullopt;
        return Term::param(base, subs, pa);
      });
    }
    while (!options.empty()) {
      int k = pick(static_cast<int>(options.size()));
      if (auto t = options[k]()) return t;
      options.erase(options.begin() + k);
    }
    return std::nullopt;
  }

  Term gen(const Arity& a, int depth, std::vector<Arity>& ctx, bool allow_abs) {
    if (a.is_fun()) {
      if (allow_abs) {
        ctx.push_back(a.argument());
        Term body = gen(a.result(), depth, ctx, true);
        ctx.pop_back();
        return Term::abs("x", a.argument(), body);
      }
      // η-short: a variable standing for the whole function
      return Term::var(fresh_name(), 0, a);
    }
    // scheme variable applied to rigid atomic-arity arguments
    if (depth > 0 && pick(4) == 0) {
      std::vector<Arity> arg_arities;
      std::vector<Term> args;
      int n = pick(3);
      for (int k = 0; k < n; ++k) {
        const std::string& at = atoms_[pick(static_cast<int>(atoms_.size()))];
        if (auto r = rigid(Arity::atomic(at), depth - 1, ctx)) {
          arg_arities.push_back(Arity::atomic(at));
          args.push_back(*r);
        }
      }
      return Term::apps(Term::var(fresh_name(), 0, Arity::curried(arg_arities, a)), args);
    }
    if (auto r = rigid(a, depth, ctx)) return *r;
    return Term::var(fresh_name(), 0, a);
  }

  std::string fresh_name() { return "v" + std::to_string(counter_++); }

  const LogicSignature& sig_;
  std::mt19937 rng_;
  std::vector<std::pair<std::string, Arity>> consts_;
  std::vector<std::string> atoms_;
  int counter_ = 0;
};

}  // namespace testsupport
