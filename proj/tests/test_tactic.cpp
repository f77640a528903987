#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "holres/error.hpp"
#include "holres/tactic.hpp"
#include "support.hpp"

using namespace holres;
using namespace testsupport;

namespace {

const Logic& fol() {
  static const Logic l = fol_fixture();
  return l;
}

Rule goal(const std::string& s) {
  Term t = parse_term(fol().signature, s);
  return mk_rule({t}, t);
}

Tactic by(const char* name, std::size_t i = 0) { return rules_tac({fol().rules.at(name)}, i); }

}  // namespace

TEST_CASE("id and fail") {
  Rule g = goal("nil |- A");
  CHECK(take(id_tac()(g), 5).size() == 1);
  CHECK(take(fail_tac()(g), 5).empty());
}

TEST_CASE("then and orelse") {
  Rule g = goal("nil |- A --> A");
  auto rs = take(then(by("impI"), by("asm_head"))(g), 5);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].is_theorem());
  // orelse commits to the first tactic that succeeds
  CHECK(take(orelse(by("conjI"), by("impI"))(g), 5).size() == 1);
  CHECK(take(orelse(by("impI"), fail_tac())(g), 5).size() == 1);
}

TEST_CASE("try and repeat") {
  Rule g = goal("nil |- A & A & A");
  CHECK(take(try_tac(by("impI"))(g), 5).size() == 1);
  // conjI always refines premise 1, which becomes the atom A after one step
  auto rs = take(repeat(by("conjI"))(g), 1);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].premises.size() == 2);
}

TEST_CASE("depth_first explores alternatives until the predicate holds") {
  // two hypotheses; only the second closes the goal
  Rule g = goal("cons(B, cons(A, nil)) |- A");
  Tactic step = rules_tac({fol().rules.at("asm_head"), fol().rules.at("asm_tail")}, 0);
  auto rs = take(depth_first([](const Term&) { return false; }, step)(g), 5);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].is_theorem());
}

TEST_CASE("depth_first node budget raises DepthExceeded") {
  SearchOptions o;
  o.max_nodes = 5;
  Rule g = goal("nil |- A");
  // asm_tail applies forever to an unknown hypothesis list
  Rule open = goal("?G |- A");
  Tactic step = rules_tac({fol().rules.at("asm_tail")}, 0);
  bool raised = false;
  try {
    take(depth_first([](const Term&) { return false; }, step, o)(open), 1);
  } catch (const Error& e) {
    raised = e.kind() == ErrorKind::DepthExceeded;
  }
  CHECK(raised);
  (void)g;
}

TEST_CASE("depth_rules_fun_tac expands the first undeferred premise") {
  auto analyzer = fol_analyzer(fol().rules, true);
  Rule g = goal("nil |- A --> A & A");
  auto rs = take(depth_rules_fun_tac(analyzer)(g), 1);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].is_theorem());
}

TEST_CASE("flexible goals are deferred by the FOL analyzer") {
  auto analyzer = fol_analyzer(fol().rules, true);
  Term flex = parse_term(fol().signature, "nil |- ?F");
  auto picked = analyzer(flex);
  for (const auto& r : picked) CHECK(r.premises.size() <= 1);  // assumption rules only
  Rule g = mk_rule({flex}, flex);
  CHECK(first_undeferred([](const Term&) { return std::vector<Rule>{}; }, g) == std::nullopt);
}

TEST_CASE("rules_tac concatenates resolvents in rule order") {
  // both hypotheses match ?A; asm_head's resolvent comes first
  Rule g = goal("cons(A, cons(B, nil)) |- ?X");
  auto rs = take(rules_tac({fol().rules.at("asm_head"), fol().rules.at("asm_tail")}, 0)(g), 5);
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].is_theorem());
  CHECK(rs[1].premises.size() == 1);
}

TEST_CASE("an analyzer offering one rule behaves like depth_first over that rule") {
  Rule g = goal("nil |- A & A & A --> A");
  std::vector<Rule> all = fol().rules.rules();
  SearchOptions o;
  o.max_depth = 4;
  auto via_analyzer = take(depth_rules_fun_tac([&](const Term&) { return all; }, o)(g), 20);
  auto via_depth_first = take(depth_first([](const Term&) { return false; }, rules_tac(all, 0), o)(g), 20);
  REQUIRE(via_analyzer.size() == via_depth_first.size());
  for (std::size_t k = 0; k < via_analyzer.size(); ++k)
    CHECK(aconv(via_analyzer[k].conclusion, via_depth_first[k].conclusion));
}

TEST_CASE("iterative deepening reports each result once") {
  auto analyzer = fol_analyzer(fol().rules, true);
  Rule g = goal("cons(A, cons(A, nil)) |- A");
  auto rs = take(deepening_rules_fun_tac(analyzer, 4)(g), 10);
  // asm_head directly, or asm_tail then asm_head
  CHECK(rs.size() == 2);
}

TEST_CASE("the FOL auto tactic proves small tautologies") {
  for (const char* s : {"nil |- A --> A", "nil |- A & B --> A", "nil |- A --> B --> A",
                        "nil |- (A --> B) --> (B --> C) --> A --> C", "nil |- A --> A | B",
                        "nil |- (ALL x. P(x)) --> P(0)", "nil |- P(0) --> (EX x. P(x))",
                        "nil |- (ALL x. P(x) & Q(x)) --> (ALL x. P(x))"}) {
    CAPTURE(s);
    SearchOptions o;
    o.max_nodes = 100000;
    auto rs = take(fol().tactics.at("auto")(o)(goal(s)), 1);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].is_theorem());
  }
}

TEST_CASE("the FOL auto tactic rejects non-theorems") {
  for (const char* s : {"nil |- A", "nil |- A --> B", "nil |- (EX x. P(x)) --> (ALL x. P(x))"}) {
    CAPTURE(s);
    SearchOptions o;
    o.max_nodes = 100000;
    // either the bounded search ends empty or it runs out of budget
    bool proved = false;
    try {
      proved = !take(fol().tactics.at("auto")(o)(goal(s)), 1).empty();
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DepthExceeded);
    }
    CHECK_FALSE(proved);
  }
}

TEST_CASE("tactical laws") {
  Rule g = goal("nil |- A & B --> B & A");
  Tactic t = by("impI");
  auto same = [](const std::vector<Rule>& a, const std::vector<Rule>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (!aconv(a[k].conclusion, b[k].conclusion) || a[k].premises.size() != b[k].premises.size()) return false;
    return true;
  };
  CHECK(same(take(then(id_tac(), t)(g), 10), take(t(g), 10)));
  CHECK(take(then(fail_tac(), t)(g), 10).empty());
  CHECK(same(take(orelse(fail_tac(), t)(g), 10), take(t(g), 10)));
  CHECK(same(take(try_tac(fail_tac())(g), 10), {g}));
  CHECK(same(take(repeat(fail_tac())(g), 10), {g}));
  CHECK(take(rules_tac({}, 0)(g), 10).empty());
}

TEST_CASE("orelse does not consult its second tactic when the first succeeds") {
  int calls = 0;
  Tactic probe = [&](const Rule& r) {
    ++calls;
    return Seq<Rule>::single(r);
  };
  auto rs = take(orelse(id_tac(), probe)(goal("nil |- A")), 10);
  CHECK(rs.size() == 1);
  CHECK(calls == 0);
}

TEST_CASE("the commuted conjunction as a then-chain") {
  Tactic chain = then(by("impI"), then(by("conjI"), then(by("conjE2"), then(by("asm_head"),
                                                                        then(by("conjE1"), by("asm_head"))))));
  auto rs = take(chain(goal("nil |- A & B --> B & A")), 1);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].is_theorem());
}

TEST_CASE("repeat splits a nested conjunction into its leaves") {
  Tactic either = orelse(by("conjI", 0), by("conjI", 1));
  auto rs = take(repeat(either)(goal("nil |- A & B & C")), 1);
  REQUIRE(rs.size() == 1);
  REQUIRE(rs[0].premises.size() == 3);
  CHECK(print_term(fol().signature, rs[0].premises[2]) == "nil |- C");
}

TEST_CASE("repeat carries instantiations from one iteration to the next") {
  // the first asm_tail fixes ?G for the whole state
  Term t = parse_term(fol().signature, "cons(B, ?G) |- A");
  Rule g = mk_rule({t}, t);
  auto rs = take(then(by("asm_tail"), by("asm_head"))(g), 1);
  REQUIRE(rs.size() == 1);
  CHECK(print_term(fol().signature, rs[0].conclusion).find("cons(A, ?") != std::string::npos);
}

TEST_CASE("depth_first on a satisfied state returns it unchanged") {
  Rule g = goal("nil |- A");
  auto rs = take(depth_first([](const Term&) { return true; }, by("conjI"))(g), 5);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].premises.size() == 1);
  CHECK(take(depth_first([](const Term&) { return false; }, by("conjI"))(g), 5).empty());
}

TEST_CASE("CTT analyzers") {
  Logic ctt = ctt_fixture();
  auto tc = ctt_type_check_analyzer(ctt.rules);
  auto di = ctt_depth_intr_analyzer(ctt.rules);
  auto p = [&](const char* s) { return parse_term(ctt.signature, s); };
  CHECK(tc(p("nil |- ?A type")).empty());
  CHECK(di(p("nil |- ?A type")).empty());
  CHECK(tc(p("nil |- ?a : Nat")).empty());
  CHECK_FALSE(di(p("nil |- ?a : Nat")).empty());
  CHECK(di(p("nil |- ?a : ?A")).empty());
  CHECK_FALSE(tc(p("nil |- 0 : ?A")).empty());
  // depth_intr never offers elimination rules
  const Rule& natE = ctt.rules.at("NatE");
  for (const auto& r : di(p("nil |- rec(0, %x y. y, 0) : ?A"))) CHECK_FALSE(aconv(r.conclusion, natE.conclusion));
}

TEST_CASE("type_check infers simple types") {
  Logic ctt = ctt_fixture();
  for (auto [expr, type] : {std::pair{"succ(succ(0))", "Nat"}, {"lambda x. succ(x)", "Prod(Nat, %x. Nat)"}}) {
    CAPTURE(expr);
    Term g = parse_term(ctt.signature, std::string("nil |- (") + expr + ") : ?A");
    auto rs = take(ctt.tactics.at("type_check")({})(mk_rule({g}, g)), 1);
    REQUIRE(rs.size() == 1);
    Term want = parse_term(ctt.signature, std::string("nil |- (") + expr + ") : " + type);
    CHECK(aconv(rs[0].conclusion, normalize(want)));
  }
}
