#pragma once

#include <optional>
#include <vector>

#include "holres/env.hpp"
#include "holres/seq.hpp"
#include "holres/term.hpp"

namespace holres {

/// Two terms to be made equal under a shared λ-prefix.
/// binders[0] is the arity of Bound 0 (innermost first).
struct DisagreementPair {
  std::vector<Binder> binders;
  Term lhs;
  Term rhs;
};

struct UnifyProblem {
  Environment env;
  std::vector<DisagreementPair> pairs;
  std::vector<DisagreementPair> flexflex;
};

struct Unifier {
  Environment env;
  std::vector<DisagreementPair> flexflex;
};

enum class PairClass { RigidRigid, FlexRigid, FlexFlex, Assign };
enum class OccursResult { OccursRigid, NoOccurrence, Unclassified };

struct ClassifiedPair {
  PairClass kind;
  DisagreementPair pair;  // flexible (or assignable) side on the left
};

/// Strips the common λ-prefix (η-expanding a side where needed) until both
/// sides have atomic arity. Both sides are instantiated and β-normal afterwards.
DisagreementPair prepare_pair(const Environment& env, const DisagreementPair& p);

ClassifiedPair classify(const DisagreementPair& p);
OccursResult occurs_rigid(const VarKey& v, const Term& t);

struct SimplResult {
  enum class Outcome { Solved, Failed, Branch };
  Outcome outcome = Outcome::Failed;
  Unifier unifier;          // Solved
  UnifyProblem problem;     // Branch: remaining problem, env updated
  DisagreementPair chosen;  // Branch: leftmost flex-rigid pair
};

SimplResult simpl(UnifyProblem prob);

/// MATCH: one environment per candidate binding of the flexible head,
/// projections first, then imitation. `p` must be flex-rigid.
std::vector<Environment> match_candidates(const DisagreementPair& p, const Environment& env);

struct UnifyOptions {
  /// Cap on MATCH steps along a branch; unset means unlimited.
  std::optional<int> max_depth;
  /// When the cap cuts off part of the search tree: throw DepthExceeded at
  /// the end of the stream, or end it silently.
  bool throw_on_depth = true;
};

/// Lazy stream of unifiers. Solutions are emitted in order of the number of
/// MATCH steps needed to reach them; among equal depths, depth-first order
/// with projections before imitation.
Seq<Unifier> unify(const Term& t, const Term& u, const Environment& env = {}, UnifyOptions options = {});
Seq<Unifier> unify_pairs(std::vector<DisagreementPair> pairs, const Environment& env = {},
                         UnifyOptions options = {});

/// Trivial unifier closing flex-flex pairs: each head becomes a constant
/// function returning one fresh variable per pair.
Environment flexflex_trivial(const std::vector<DisagreementPair>& pairs, Environment env = {});

/// env of u extended by the trivial unifier for its flex-flex pairs.
Environment close_unifier(const Unifier& u);

}  // namespace holres
