#pragma once

#include <string>
#include <vector>

#include "holres/seq.hpp"
#include "holres/term.hpp"
#include "holres/unify.hpp"

namespace holres {

/// The judgement arity every premise and conclusion must have.
Arity judgement_arity();

/// Horn clause over λ-terms. Doubles as the goal tree of a backwards proof:
/// the conclusion is the original goal, the premises are the open subgoals.
struct Rule {
  std::vector<Term> premises;
  Term conclusion;
  std::vector<DisagreementPair> flexflex;

  bool is_theorem() const { return premises.empty(); }
};

/// Validates and normalizes. Throws BadArity or InconsistentVar.
Rule mk_rule(std::vector<Term> premises, Term conclusion);

int max_generation(const Rule& r);
std::vector<Term> collect_vars(const Rule& r);
Rule standardize(const Rule& r, int generation);
/// Renames variables so that all are at generation 0 with distinct names.
Rule rename_to_generation_zero(const Rule& r);
/// Instantiates and normalizes every part; flex-flex pairs are re-prepared.
Rule instantiate(const Environment& env, const Rule& r);

/// Backwards step: unify the conclusion of `r` (standardized apart) with
/// premise `index` of `goal` and splice r's premises in its place.
Seq<Rule> resolve(const Rule& goal, std::size_t index, const Rule& r, UnifyOptions options = {});

/// Forwards step: discharges the leading premises of `r` with theorem schemes.
Seq<Rule> forward_resolve(const Rule& r, const std::vector<Rule>& facts, UnifyOptions options = {});

/// True iff `r` is an instance of `general` (same premise count; some
/// substitution for general's variables makes every part α-equal to r's).
bool derived_rule_check(const Rule& r, const Rule& general);

}  // namespace holres
