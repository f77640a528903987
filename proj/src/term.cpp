#include "holres/term.hpp"

#include <algorithm>
#include <sstream>

#include "holres/error.hpp"

namespace holres {

Term Term::constant(std::string name, Arity arity) {
  return Term(std::make_shared<const Node>(Node{TermKind::Const, std::move(name), 0, std::move(arity), {}, {}, {}}));
}

Term Term::var(std::string name, int generation, Arity arity) {
  return Term(std::make_shared<const Node>(
      Node{TermKind::Var, std::move(name), generation, std::move(arity), {}, {}, {}}));
}

Term Term::bound(int index) {
  return Term(std::make_shared<const Node>(Node{TermKind::Bound, {}, index, {}, {}, {}, {}}));
}

Term Term::abs(std::string hint, Arity argument, Term body) {
  return Term(std::make_shared<const Node>(
      Node{TermKind::Abs, std::move(hint), 0, std::move(argument), std::move(body), {}, {}}));
}

Term Term::app(Term fun, Term arg) {
  return Term(std::make_shared<const Node>(Node{TermKind::App, {}, 0, {}, std::move(fun), std::move(arg), {}}));
}

Term Term::apps(Term head, std::span<const Term> args) {
  for (const auto& a : args) head = app(std::move(head), a);
  return head;
}

Term Term::param(std::string base, std::vector<Term> subscripts, Arity arity) {
  return Term(std::make_shared<const Node>(
      Node{TermKind::Param, std::move(base), 0, std::move(arity), {}, {}, std::move(subscripts)}));
}

namespace {

Arity arity_in(const Term& t, std::vector<Arity>& ctx) {
  switch (t.kind()) {
    case TermKind::Const:
    case TermKind::Var:
    case TermKind::Param:
      return t.arity();
    case TermKind::Bound: {
      if (t.index() < 0 || static_cast<std::size_t>(t.index()) >= ctx.size())
        throw Error(ErrorKind::IllAritied, "bound variable index " + std::to_string(t.index()) + " out of range");
      return ctx[ctx.size() - 1 - static_cast<std::size_t>(t.index())];
    }
    case TermKind::Abs: {
      ctx.push_back(t.arity());
      Arity body = arity_in(t.body(), ctx);
      ctx.pop_back();
      return Arity::fun(t.arity(), body);
    }
    case TermKind::App: {
      Arity f = arity_in(t.fun(), ctx);
      Arity a = arity_in(t.arg(), ctx);
      if (!f.is_fun())
        throw Error(ErrorKind::IllAritied, "application of a term of atomic arity " + f.to_string());
      if (f.argument() != a)
        throw Error(ErrorKind::IllAritied,
                    "argument arity " + a.to_string() + " does not match " + f.argument().to_string());
      return f.result();
    }
  }
  throw Error(ErrorKind::IllAritied, "malformed term");
}

// Replaces Bound(depth) by arg (shifted under depth binders) and closes the gap.
Term subst_bound(const Term& t, const Term& arg, int depth) {
  switch (t.kind()) {
    case TermKind::Bound:
      if (t.index() == depth) return shift(arg, depth);
      if (t.index() > depth) return Term::bound(t.index() - 1);
      return t;
    case TermKind::Abs: {
      Term b = subst_bound(t.body(), arg, depth + 1);
      return b.same_node(t.body()) ? t : Term::abs(t.name(), t.arity(), b);
    }
    case TermKind::App: {
      Term f = subst_bound(t.fun(), arg, depth);
      Term a = subst_bound(t.arg(), arg, depth);
      return (f.same_node(t.fun()) && a.same_node(t.arg())) ? t : Term::app(f, a);
    }
    default:
      return t;
  }
}

}  // namespace

Arity arity_of(const Term& t, std::span<const Arity> binders) {
  // arity_in keeps the innermost binder at the back
  std::vector<Arity> ctx(binders.rbegin(), binders.rend());
  return arity_in(t, ctx);
}

std::pair<Term, std::vector<Term>> strip_comb(const Term& t) {
  std::vector<Term> args;
  const Term* h = &t;
  while (h->is_app()) {
    args.push_back(h->arg());
    h = &h->fun();
  }
  std::reverse(args.begin(), args.end());
  return {*h, std::move(args)};
}

Term shift(const Term& t, int delta, int cutoff) {
  if (delta == 0) return t;
  switch (t.kind()) {
    case TermKind::Bound:
      return t.index() >= cutoff ? Term::bound(t.index() + delta) : t;
    case TermKind::Abs: {
      Term b = shift(t.body(), delta, cutoff + 1);
      return b.same_node(t.body()) ? t : Term::abs(t.name(), t.arity(), b);
    }
    case TermKind::App: {
      Term f = shift(t.fun(), delta, cutoff);
      Term a = shift(t.arg(), delta, cutoff);
      return (f.same_node(t.fun()) && a.same_node(t.arg())) ? t : Term::app(f, a);
    }
    default:
      return t;
  }
}

Term beta_contract(const Term& abs, const Term& arg) { return subst_bound(abs.body(), arg, 0); }

Term normalize(const Term& t) {
  switch (t.kind()) {
    case TermKind::Abs: {
      Term b = normalize(t.body());
      return b.same_node(t.body()) ? t : Term::abs(t.name(), t.arity(), b);
    }
    case TermKind::App: {
      Term f = normalize(t.fun());
      Term a = normalize(t.arg());
      if (f.is_abs()) return normalize(beta_contract(f, a));
      return (f.same_node(t.fun()) && a.same_node(t.arg())) ? t : Term::app(f, a);
    }
    case TermKind::Param: {
      std::vector<Term> subs;
      bool changed = false;
      for (const auto& s : t.subscripts()) {
        subs.push_back(normalize(s));
        changed = changed || !subs.back().same_node(s);
      }
      return changed ? Term::param(t.name(), std::move(subs), t.arity()) : t;
    }
    default:
      return t;
  }
}

HeadNormal head_normal(const Term& t) {
  HeadNormal hn;
  Term cur = t;
  for (;;) {
    while (cur.is_abs()) {
      hn.binders.push_back({cur.name(), cur.arity()});
      cur = cur.body();
    }
    auto [head, args] = strip_comb(cur);
    if (head.is_abs() && !args.empty()) {
      Term reduced = beta_contract(head, args.front());
      cur = Term::apps(reduced, std::span<const Term>(args).subspan(1));
      continue;
    }
    hn.head = head;
    hn.args = std::move(args);
    return hn;
  }
}

namespace {

Term eta_in(const Term& t, std::vector<Arity>& ctx) {
  if (t.is_abs()) {
    ctx.push_back(t.arity());
    Term b = eta_in(t.body(), ctx);
    ctx.pop_back();
    return Term::abs(t.name(), t.arity(), b);
  }
  auto [head, args] = strip_comb(t);
  if (head.is_param()) {
    std::vector<Term> subs;
    std::vector<Arity> empty;
    for (const auto& s : head.subscripts()) subs.push_back(eta_in(s, empty));
    head = Term::param(head.name(), std::move(subs), head.arity());
  }
  for (auto& a : args) a = eta_in(a, ctx);
  Term u = Term::apps(head, args);
  Arity ar = arity_in(u, ctx);
  if (!ar.is_fun()) return u;
  ctx.push_back(ar.argument());
  Term inner = eta_in(Term::app(shift(u, 1), Term::bound(0)), ctx);
  ctx.pop_back();
  return Term::abs("x", ar.argument(), inner);
}

}  // namespace

Term eta_expand(const Term& t, std::span<const Arity> binders) {
  std::vector<Arity> ctx(binders.rbegin(), binders.rend());
  return eta_in(t, ctx);
}

bool aconv(const Term& t, const Term& u) {
  if (t.same_node(u)) return true;
  if (t.kind() != u.kind()) return false;
  switch (t.kind()) {
    case TermKind::Const:
      return t.name() == u.name() && t.arity() == u.arity();
    case TermKind::Var:
      return t.name() == u.name() && t.generation() == u.generation() && t.arity() == u.arity();
    case TermKind::Bound:
      return t.index() == u.index();
    case TermKind::Abs:
      return t.arity() == u.arity() && aconv(t.body(), u.body());
    case TermKind::App:
      return aconv(t.fun(), u.fun()) && aconv(t.arg(), u.arg());
    case TermKind::Param: {
      if (t.name() != u.name() || t.arity() != u.arity() || t.subscripts().size() != u.subscripts().size())
        return false;
      for (std::size_t i = 0; i < t.subscripts().size(); ++i)
        if (!aconv(t.subscripts()[i], u.subscripts()[i])) return false;
      return true;
    }
  }
  return false;
}

bool has_loose_bound(const Term& t, int depth) {
  switch (t.kind()) {
    case TermKind::Bound: return t.index() >= depth;
    case TermKind::Abs: return has_loose_bound(t.body(), depth + 1);
    case TermKind::App: return has_loose_bound(t.fun(), depth) || has_loose_bound(t.arg(), depth);
    default: return false;
  }
}

int max_generation(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: return t.generation();
    case TermKind::Abs: return max_generation(t.body());
    case TermKind::App: return std::max(max_generation(t.fun()), max_generation(t.arg()));
    case TermKind::Param: {
      int m = -1;
      for (const auto& s : t.subscripts()) m = std::max(m, max_generation(s));
      return m;
    }
    default: return -1;
  }
}

void collect_vars(const Term& t, std::vector<Term>& out) {
  switch (t.kind()) {
    case TermKind::Var:
      if (std::none_of(out.begin(), out.end(), [&](const Term& v) { return v.var_key() == t.var_key(); }))
        out.push_back(t);
      return;
    case TermKind::Abs: collect_vars(t.body(), out); return;
    case TermKind::App:
      collect_vars(t.fun(), out);
      collect_vars(t.arg(), out);
      return;
    case TermKind::Param:
      for (const auto& s : t.subscripts()) collect_vars(s, out);
      return;
    default: return;
  }
}

std::vector<Term> collect_vars(const Term& t) {
  std::vector<Term> out;
  collect_vars(t, out);
  return out;
}

bool occurs(const VarKey& v, const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: return t.var_key() == v;
    case TermKind::Abs: return occurs(v, t.body());
    case TermKind::App: return occurs(v, t.fun()) || occurs(v, t.arg());
    case TermKind::Param:
      return std::any_of(t.subscripts().begin(), t.subscripts().end(),
                         [&](const Term& s) { return occurs(v, s); });
    default: return false;
  }
}

Term standardize(const Term& t, int generation) {
  switch (t.kind()) {
    case TermKind::Var:
      return t.generation() == generation ? t : Term::var(t.name(), generation, t.arity());
    case TermKind::Abs:
      return Term::abs(t.name(), t.arity(), standardize(t.body(), generation));
    case TermKind::App:
      return Term::app(standardize(t.fun(), generation), standardize(t.arg(), generation));
    case TermKind::Param: {
      std::vector<Term> subs;
      for (const auto& s : t.subscripts()) subs.push_back(standardize(s, generation));
      return Term::param(t.name(), std::move(subs), t.arity());
    }
    default:
      return t;
  }
}

namespace {

bool contains_param(const Term& p, const Term& t) {
  switch (t.kind()) {
    case TermKind::Param:
      if (aconv(p, t)) return true;
      return std::any_of(t.subscripts().begin(), t.subscripts().end(),
                         [&](const Term& s) { return contains_param(p, s); });
    case TermKind::Abs: return contains_param(p, t.body());
    case TermKind::App: return contains_param(p, t.fun()) || contains_param(p, t.arg());
    default: return false;
  }
}

}  // namespace

bool has_cyclic_param(const Term& t) {
  switch (t.kind()) {
    case TermKind::Param:
      for (const auto& s : t.subscripts())
        if (contains_param(t, s) || has_cyclic_param(s)) return true;
      return false;
    case TermKind::Abs: return has_cyclic_param(t.body());
    case TermKind::App: return has_cyclic_param(t.fun()) || has_cyclic_param(t.arg());
    default: return false;
  }
}

}  // namespace holres
