#include "holres/unify.hpp"

#include <algorithm>
#include <deque>

#include "holres/error.hpp"

namespace holres {

namespace {

std::vector<Arity> binder_arities(const std::vector<Binder>& binders) {
  std::vector<Arity> out;
  out.reserve(binders.size());
  for (const auto& b : binders) out.push_back(b.arity);
  return out;
}

Term eta_step(const Term& t) { return Term::app(shift(t, 1), Term::bound(0)); }

bool is_flex(const Term& t) { return strip_comb(t).first.is_var(); }

// Assignable when `side` is a bare variable and `other` is closed under the
// pair's binders and does not mention it.
bool assignable(const Term& side, const Term& other) {
  return side.is_var() && !has_loose_bound(other) && !occurs(side.var_key(), other);
}

void occurs_walk(const VarKey& v, const Term& t, bool rigid, bool& on_rigid, bool& anywhere) {
  const Term* cur = &t;
  while (cur->is_abs()) cur = &cur->body();
  auto [head, args] = strip_comb(*cur);
  bool args_rigid = rigid;
  switch (head.kind()) {
    case TermKind::Var:
      if (head.var_key() == v) {
        anywhere = true;
        if (rigid) on_rigid = true;
      }
      args_rigid = false;
      break;
    case TermKind::Param:
      for (const auto& s : head.subscripts()) occurs_walk(v, s, rigid, on_rigid, anywhere);
      break;
    case TermKind::Abs:
      // not head normal; occurrences here are not reliably rigid
      occurs_walk(v, head, false, on_rigid, anywhere);
      args_rigid = false;
      break;
    default:
      break;
  }
  for (const auto& a : args) occurs_walk(v, a, args_rigid, on_rigid, anywhere);
}

bool same_rigid_head(const Term& a, const Term& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Const: return a.name() == b.name() && a.arity() == b.arity();
    case TermKind::Bound: return a.index() == b.index();
    case TermKind::Param:
      return a.name() == b.name() && a.arity() == b.arity() && a.subscripts().size() == b.subscripts().size();
    default: return false;
  }
}

}  // namespace

DisagreementPair prepare_pair(const Environment& env, const DisagreementPair& p) {
  DisagreementPair out{p.binders, instantiate(env, p.lhs), instantiate(env, p.rhs)};
  auto push = [&](Binder b) { out.binders.insert(out.binders.begin(), std::move(b)); };
  for (;;) {
    if (out.lhs.is_abs() && out.rhs.is_abs()) {
      push({out.lhs.name(), out.lhs.arity()});
      out.lhs = out.lhs.body();
      out.rhs = out.rhs.body();
    } else if (out.lhs.is_abs()) {
      push({out.lhs.name(), out.lhs.arity()});
      out.lhs = out.lhs.body();
      out.rhs = normalize(eta_step(out.rhs));
    } else if (out.rhs.is_abs()) {
      push({out.rhs.name(), out.rhs.arity()});
      out.rhs = out.rhs.body();
      out.lhs = normalize(eta_step(out.lhs));
    } else {
      auto ctx = binder_arities(out.binders);
      Arity ar = arity_of(out.lhs, ctx);
      if (!ar.is_fun()) return out;
      push({"x", ar.argument()});
      out.lhs = eta_step(out.lhs);
      out.rhs = eta_step(out.rhs);
    }
  }
}

OccursResult occurs_rigid(const VarKey& v, const Term& t) {
  bool on_rigid = false, anywhere = false;
  occurs_walk(v, t, true, on_rigid, anywhere);
  if (on_rigid) return OccursResult::OccursRigid;
  return anywhere ? OccursResult::Unclassified : OccursResult::NoOccurrence;
}

ClassifiedPair classify(const DisagreementPair& p) {
  DisagreementPair swapped{p.binders, p.rhs, p.lhs};
  if (assignable(p.lhs, p.rhs)) return {PairClass::Assign, p};
  if (assignable(p.rhs, p.lhs)) return {PairClass::Assign, swapped};
  bool lf = is_flex(p.lhs), rf = is_flex(p.rhs);
  if (lf && rf) return {PairClass::FlexFlex, p};
  if (lf) return {PairClass::FlexRigid, p};
  if (rf) return {PairClass::FlexRigid, swapped};
  return {PairClass::RigidRigid, p};
}

SimplResult simpl(UnifyProblem prob) {
  SimplResult result;
  Environment env = std::move(prob.env);
  std::deque<DisagreementPair> work(prob.pairs.begin(), prob.pairs.end());
  work.insert(work.end(), prob.flexflex.begin(), prob.flexflex.end());
  std::vector<DisagreementPair> flex_rigid, flex_flex;

  auto requeue = [&] {
    work.insert(work.end(), flex_rigid.begin(), flex_rigid.end());
    work.insert(work.end(), flex_flex.begin(), flex_flex.end());
    flex_rigid.clear();
    flex_flex.clear();
  };

  // Binds v := t when legal. Returns false on a rigid occurrence (failure).
  auto try_assign = [&](const Term& v, const Term& t, bool& bound) {
    bound = false;
    if (!v.is_var()) return true;
    OccursResult occ = occurs_rigid(v.var_key(), t);
    if (occ == OccursResult::OccursRigid) return aconv(v, t);
    if (occ == OccursResult::NoOccurrence && !has_loose_bound(t)) {
      env.bind(v.var_key(), t);
      bound = true;
    }
    return true;
  };

  while (!work.empty()) {
    DisagreementPair raw = std::move(work.front());
    work.pop_front();

    // Assignments are tried before the λ-prefix is stripped so that function
    // variables bind directly to abstractions.
    Term l0 = instantiate(env, raw.lhs), r0 = instantiate(env, raw.rhs);
    if (aconv(l0, r0)) continue;
    bool bound = false;
    if (!try_assign(l0, r0, bound)) return result;
    if (!bound && !try_assign(r0, l0, bound)) return result;
    if (bound) {
      requeue();
      continue;
    }

    DisagreementPair p = prepare_pair(env, raw);
    if (aconv(p.lhs, p.rhs)) continue;
    if (!try_assign(p.lhs, p.rhs, bound)) return result;
    if (!bound && !try_assign(p.rhs, p.lhs, bound)) return result;
    if (bound) {
      requeue();
      continue;
    }

    ClassifiedPair c = classify(p);
    switch (c.kind) {
      case PairClass::Assign:
      case PairClass::FlexFlex:
        flex_flex.push_back(std::move(c.pair));
        break;
      case PairClass::FlexRigid:
        flex_rigid.push_back(std::move(c.pair));
        break;
      case PairClass::RigidRigid: {
        auto [lh, la] = strip_comb(c.pair.lhs);
        auto [rh, ra] = strip_comb(c.pair.rhs);
        if (!same_rigid_head(lh, rh) || la.size() != ra.size()) return result;
        std::vector<DisagreementPair> sub;
        if (lh.is_param())
          for (std::size_t i = 0; i < lh.subscripts().size(); ++i)
            sub.push_back({{}, lh.subscripts()[i], rh.subscripts()[i]});
        for (std::size_t i = 0; i < la.size(); ++i) sub.push_back({c.pair.binders, la[i], ra[i]});
        work.insert(work.begin(), sub.begin(), sub.end());
        break;
      }
    }
  }

  if (flex_rigid.empty()) {
    result.outcome = SimplResult::Outcome::Solved;
    result.unifier = Unifier{std::move(env), std::move(flex_flex)};
    return result;
  }
  result.outcome = SimplResult::Outcome::Branch;
  result.chosen = flex_rigid.front();
  result.problem = UnifyProblem{std::move(env), std::move(flex_rigid), std::move(flex_flex)};
  return result;
}

std::vector<Environment> match_candidates(const DisagreementPair& pair, const Environment& env) {
  DisagreementPair p = prepare_pair(env, pair);
  if (!is_flex(p.lhs)) std::swap(p.lhs, p.rhs);
  auto [fhead, fargs] = strip_comb(p.lhs);
  auto [rhead, rargs] = strip_comb(p.rhs);
  if (!fhead.is_var() || rhead.is_var()) return {};

  const std::vector<Arity> alphas = fhead.arity().spine_arguments();
  const Arity beta = fhead.arity().spine_result();
  const int arg_count = static_cast<int>(alphas.size());

  // h(x1..xp) under the p candidate binders, for a fresh h of arity alphas -> result
  auto fresh_app = [&](Environment& e, const Arity& result) {
    Term h = e.fresh_var("h", Arity::curried(alphas, result));
    std::vector<Term> xs;
    for (int i = 0; i < arg_count; ++i) xs.push_back(Term::bound(arg_count - 1 - i));
    return Term::apps(h, xs);
  };
  auto close = [&](Term body) {
    for (int i = arg_count - 1; i >= 0; --i) body = Term::abs("x" + std::to_string(i + 1), alphas[i], body);
    return body;
  };

  std::vector<Environment> out;
  for (int i = 0; i < arg_count; ++i) {
    if (alphas[i].spine_result() != beta) continue;
    Environment e = env;
    std::vector<Term> hs;
    for (const auto& gamma : alphas[i].spine_arguments()) hs.push_back(fresh_app(e, gamma));
    e.bind(fhead.var_key(), close(Term::apps(Term::bound(arg_count - 1 - i), hs)));
    out.push_back(std::move(e));
  }
  // Imitating a parameter whose subscripts mention the flexible head would
  // make the binding cyclic.
  if (rhead.is_const() || (rhead.is_param() && !occurs(fhead.var_key(), rhead))) {
    Environment e = env;
    std::vector<Term> hs;
    for (const auto& delta : rhead.arity().spine_arguments()) {
      if (hs.size() == rargs.size()) break;
      hs.push_back(fresh_app(e, delta));
    }
    e.bind(fhead.var_key(), close(Term::apps(rhead, hs)));
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

int max_generation_of(const std::vector<DisagreementPair>& pairs) {
  int m = -1;
  for (const auto& p : pairs) m = std::max({m, max_generation(p.lhs), max_generation(p.rhs)});
  return m;
}

class UnifySearch {
 public:
  UnifySearch(std::vector<DisagreementPair> pairs, Environment env, UnifyOptions options)
      : options_(options) {
    env.reserve_generation(max_generation_of(pairs) + 1);
    root_ = UnifyProblem{std::move(env), std::move(pairs), {}};
  }

  std::optional<Unifier> next() {
    for (;;) {
      if (stack_.empty()) {
        if (done_) return std::nullopt;
        if (started_) {
          if (!cutoff_) {
            done_ = true;
            return std::nullopt;
          }
          if (options_.max_depth && limit_ >= *options_.max_depth) {
            done_ = true;
            if (options_.throw_on_depth)
              throw Error(ErrorKind::DepthExceeded,
                          "unification search cut off at depth " + std::to_string(limit_));
            return std::nullopt;
          }
          ++limit_;
        }
        started_ = true;
        cutoff_ = false;
        stack_.push_back({root_, 0});
      }
      Node node = std::move(stack_.back());
      stack_.pop_back();
      SimplResult r = simpl(std::move(node.problem));
      switch (r.outcome) {
        case SimplResult::Outcome::Failed:
          break;
        case SimplResult::Outcome::Solved:
          if (node.depth == limit_) return std::move(r.unifier);
          break;
        case SimplResult::Outcome::Branch: {
          if (node.depth >= limit_) {
            cutoff_ = true;
            break;
          }
          auto candidates = match_candidates(r.chosen, r.problem.env);
          for (auto it = candidates.rbegin(); it != candidates.rend(); ++it)
            stack_.push_back({UnifyProblem{*it, r.problem.pairs, r.problem.flexflex}, node.depth + 1});
          break;
        }
      }
    }
  }

 private:
  struct Node {
    UnifyProblem problem;
    int depth;
  };
  UnifyOptions options_;
  UnifyProblem root_;
  std::vector<Node> stack_;
  int limit_ = 0;
  bool started_ = false;
  bool cutoff_ = false;
  bool done_ = false;
};

}  // namespace

Seq<Unifier> unify_pairs(std::vector<DisagreementPair> pairs, const Environment& env, UnifyOptions options) {
  auto search = std::make_shared<UnifySearch>(std::move(pairs), env, options);
  return seq_from_generator<Unifier>([search] { return search->next(); });
}

Seq<Unifier> unify(const Term& t, const Term& u, const Environment& env, UnifyOptions options) {
  return unify_pairs({DisagreementPair{{}, t, u}}, env, options);
}

Environment flexflex_trivial(const std::vector<DisagreementPair>& pairs, Environment env) {
  for (const auto& raw : pairs) {
    DisagreementPair p = prepare_pair(env, raw);
    if (aconv(p.lhs, p.rhs)) continue;
    auto [lh, la] = strip_comb(p.lhs);
    auto [rh, ra] = strip_comb(p.rhs);
    auto constant_fn = [](const Term& head, const Term& value) {
      auto args = head.arity().spine_arguments();
      Term body = value;
      for (auto it = args.rbegin(); it != args.rend(); ++it) body = Term::abs("x", *it, body);
      return body;
    };
    if (lh.is_var() && rh.is_var()) {
      Term h = env.fresh_var("h", arity_of(p.lhs, binder_arities(p.binders)));
      env.bind(lh.var_key(), constant_fn(lh, h));
      if (rh.var_key() != lh.var_key()) env.bind(rh.var_key(), constant_fn(rh, h));
    } else if (lh.is_var() && !has_loose_bound(p.rhs) && !occurs(lh.var_key(), p.rhs)) {
      env.bind(lh.var_key(), constant_fn(lh, p.rhs));
    } else if (rh.is_var() && !has_loose_bound(p.lhs) && !occurs(rh.var_key(), p.lhs)) {
      env.bind(rh.var_key(), constant_fn(rh, p.lhs));
    }
  }
  return env;
}

Environment close_unifier(const Unifier& u) { return flexflex_trivial(u.flexflex, u.env); }

}  // namespace holres
