#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "holres/error.hpp"
#include "support.hpp"

using namespace holres;
using namespace testsupport;

namespace {

const Logic& fol() {
  static const Logic l = fol_fixture();
  return l;
}

Term fol_term(const std::string& s) { return parse_term(fol().signature, s); }

Rule goal(const std::string& s) {
  Term t = fol_term(s);
  return mk_rule({t}, t);
}

}  // namespace

TEST_CASE("mk_rule validates arities and variable consistency") {
  Arity i = Arity::atomic("i");
  Term c = Term::constant("c", i);
  bool bad = false;
  try {
    mk_rule({}, c);
  } catch (const Error& e) {
    bad = e.kind() == ErrorKind::BadArity;
  }
  CHECK(bad);
  Term p1 = Term::app(Term::constant("P", Arity::fun(i, judgement_arity())), Term::var("x", 0, i));
  Term p2 = Term::app(Term::constant("Q", Arity::fun(Arity::atomic("o"), judgement_arity())),
                      Term::var("x", 0, Arity::atomic("o")));
  bool inconsistent = false;
  try {
    mk_rule({p1}, p2);
  } catch (const Error& e) {
    inconsistent = e.kind() == ErrorKind::InconsistentVar;
  }
  CHECK(inconsistent);
}

TEST_CASE("backwards resolution replaces the chosen premise") {
  Rule g = goal("nil |- A & B");
  auto rs = take(resolve(g, 0, fol().rules.at("conjI")), 5);
  REQUIRE(rs.size() == 1);
  REQUIRE(rs[0].premises.size() == 2);
  CHECK(aconv(rs[0].premises[0], fol_term("nil |- A")));
  CHECK(aconv(rs[0].premises[1], fol_term("nil |- B")));
  CHECK(aconv(rs[0].conclusion, fol_term("nil |- A & B")));
}

TEST_CASE("resolution standardizes the rule apart from the goal") {
  // the goal uses ?A and ?G, the same names as the rule
  Rule g = goal("?G |- ?A & B");
  auto rs = take(resolve(g, 0, fol().rules.at("conjI")), 5);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].premises.size() == 2);
}

TEST_CASE("resolution against a non-matching conclusion yields nothing") {
  CHECK(take(resolve(goal("nil |- A & B"), 0, fol().rules.at("impI")), 5).empty());
}

TEST_CASE("resolution with the premise index out of range") {
  bool raised = false;
  try {
    take(resolve(goal("nil |- A"), 3, fol().rules.at("conjI")), 1);
  } catch (const Error& e) {
    raised = e.kind() == ErrorKind::IndexOutOfRange;
  }
  CHECK(raised);
}

TEST_CASE("forward resolution discharges premises with theorems") {
  Rule fact = mk_rule({}, fol_term("nil |- A"));
  auto rs = take(forward_resolve(fol().rules.at("conjI"), {fact, fact}), 5);
  REQUIRE(!rs.empty());
  CHECK(rs[0].is_theorem());
  CHECK(aconv(rs[0].conclusion, fol_term("nil |- A & A")));
}

TEST_CASE("derived_rule_check accepts instances and rejects others") {
  const Rule& conjI = fol().rules.at("conjI");
  auto ts = parse_terms(fol().signature, {"nil |- A", "nil |- B", "nil |- A & B"});
  CHECK(derived_rule_check(mk_rule({ts[0], ts[1]}, ts[2]), conjI));
  CHECK_FALSE(derived_rule_check(mk_rule({ts[1], ts[0]}, ts[2]), conjI));
  CHECK_FALSE(derived_rule_check(mk_rule({ts[0]}, ts[2]), conjI));
  CHECK(derived_rule_check(conjI, conjI));
}

TEST_CASE("rename_to_generation_zero keeps distinct variables distinct") {
  Rule g = goal("?G |- ?A");
  auto rs = take(resolve(g, 0, fol().rules.at("conjI")), 1);
  REQUIRE(rs.size() == 1);
  Rule r = rename_to_generation_zero(rs[0]);
  auto vs = collect_vars(r);
  std::set<std::string> names;
  for (const auto& v : vs) {
    CHECK(v.generation() == 0);
    names.insert(v.name());
  }
  CHECK(names.size() == vs.size());
}
