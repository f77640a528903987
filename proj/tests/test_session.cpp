#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "holres/error.hpp"
#include "holres/session.hpp"
#include "support.hpp"

using namespace holres;
using namespace testsupport;

namespace {

std::shared_ptr<const Logic> fol() {
  static auto l = std::make_shared<const Logic>(fol_fixture());
  return l;
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ProtocolError;
}

}  // namespace

TEST_CASE("goal, apply, undo and qed") {
  Session s(fol());
  s.new_goal("nil |- A --> A");
  CHECK(s.state().premises.size() == 1);
  s.apply("impI");
  CHECK(s.history().size() == 1);
  s.undo();
  CHECK(s.history().empty());
  CHECK(kind_of([&] { s.undo(); }) == ErrorKind::EmptyHistory);
  CHECK(kind_of([&] { s.qed(); }) == ErrorKind::GoalsRemain);
  s.apply("impI THEN asm_head");
  Rule thm = s.qed();
  CHECK(thm.is_theorem());
}

TEST_CASE("a failing tactic leaves the state unchanged") {
  Session s(fol());
  s.new_goal("nil |- A & B");
  CHECK(kind_of([&] { s.apply("impI"); }) == ErrorKind::TacticFailed);
  CHECK(s.history().empty());
  CHECK(s.state().premises.size() == 1);
}

TEST_CASE("tactic expressions") {
  Session s(fol());
  s.new_goal("nil |- A --> B --> A & B");
  s.apply("repeat(impI)");
  CHECK(s.state().premises.size() == 1);
  s.apply("conjI THEN (asm_head ORELSE asm_tail)");
  s.apply("depth_first(asm_head ORELSE asm_tail)");
  CHECK(s.state().is_theorem());
  CHECK(kind_of([&] { s.parse_tactic("resolve nope"); }) == ErrorKind::UnknownRule);
  CHECK(kind_of([&] { s.parse_tactic("impI THEN"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("resolve at a given subgoal") {
  Session s(fol());
  s.new_goal("cons(A, cons(B, nil)) |- B & A");
  s.apply("conjI");
  s.apply("resolve asm_head at 2");
  CHECK(s.state().premises.size() == 1);
  CHECK(kind_of([&] { s.apply("resolve asm_head at 5"); }) == ErrorKind::TacticFailed);
}

TEST_CASE("backtracking an earlier step drops later steps") {
  Session s(fol());
  s.new_goal("cons(A, cons(A, nil)) |- A & A");
  s.apply("conjI");
  s.apply("resolve asm_head, asm_tail");
  s.apply("depth_first(resolve asm_head, asm_tail)");
  CHECK(s.history().size() == 3);
  CHECK(s.has_alternative(3));
  s.backtrack(3);
  CHECK(s.history().size() == 3);
  CHECK(kind_of([&] { s.backtrack(9); }) == ErrorKind::BacktrackExhausted);
  s.backtrack(2);
  CHECK(s.history().size() == 2);
  CHECK(s.state().premises.size() == 2);
}

TEST_CASE("applicable rules list unifier counts") {
  Session s(fol());
  s.new_goal("nil |- A & B");
  auto rules = s.applicable_rules(0);
  bool conj = false;
  for (const auto& [name, n] : rules) {
    CHECK(n >= 1);
    if (name == "conjI") conj = true;
  }
  CHECK(conj);
}

TEST_CASE("solve pages through unifiers") {
  auto pure = std::make_shared<const Logic>(pure_logic());
  Session s(pure);
  SolvePage p = s.solve("?f(C, ?x)", "A(B)", 0, 2);
  CHECK(p.unifiers.size() == 2);
  CHECK(p.more);
  SolvePage q = s.solve("?f(C, ?x)", "A(B)", 2, 2);
  CHECK(q.unifiers.size() == 1);
  CHECK_FALSE(q.more);
}

TEST_CASE("scripts replay, and a bad script reports its line") {
  Session s(fol());
  s.new_goal("nil |- A & B --> B & A");
  s.apply("impI");
  s.apply("conjI");
  std::string script = s.script();
  Session r = Session::replay(fol(), script);
  CHECK(print_rule(fol()->signature, r.state()) == print_rule(fol()->signature, s.state()));

  std::string path = (std::filesystem::temp_directory_path() / "holres_test_script.txt").string();
  s.save_script(path);
  Session f = Session::replay_file(fol(), path);
  CHECK(f.history().size() == 2);
  std::remove(path.c_str());

  std::string bad = script + "impI\n";
  bool raised = false;
  try {
    Session::replay(fol(), bad);
  } catch (const Error& e) {
    raised = e.kind() == ErrorKind::ReplayMismatch && std::string(e.what()).find("line 4") != std::string::npos;
  }
  CHECK(raised);
}

TEST_CASE("the display compresses Skolem parameters") {
  Session s(fol());
  s.new_goal("nil |- ALL x. P(x) --> P(x)");
  s.apply("allI");
  std::string shown = s.show();
  CHECK(shown.find("all#1") != std::string::npos);
  CHECK(s.legend().entries().size() == 1);
  SessionOptions o;
  o.compress_skolem = false;
  Session full(fol(), o);
  full.new_goal("nil |- ALL x. P(x) --> P(x)");
  full.apply("allI");
  CHECK(full.show().find("all[") != std::string::npos);
}

TEST_CASE("new_goal checks the goal") {
  Session s(fol());
  CHECK(kind_of([&] { s.new_goal("A & B"); }) == ErrorKind::BadArity);
  s.new_goal("?G |- ?A & B");
  CHECK(s.state().premises.size() == 1);
  CHECK(aconv(s.state().premises[0], s.state().conclusion));
}

TEST_CASE("replay against a changed rule file fails") {
  Session s(fol());
  s.new_goal("nil |- A & B --> B & A");
  s.apply("impI");
  s.apply("conjI");
  std::string script = s.script();
  auto changed = std::make_shared<const Logic>(load_logic(
      "logic fol2\narity term form hyps\nconst nil : hyps\nconst cons : form -> hyps -> hyps\n"
      "const |- : hyps -> form -> prop\nconst conj imp : form -> form -> form\nconst A B : form\n"
      "infix |- |- 1 none\ninfix --> imp 10 right\ninfix & conj 30 right\n"
      "rule impI\npremise \"cons(?A, ?G) |- ?B\"\nconclusion \"?G |- ?A --> ?B\"\n"
      "rule conjI\npremise \"?G |- ?A\"\nconclusion \"?G |- ?A & ?B\"\n"));
  Session ok = Session::replay(changed, script);  // same names, different rule
  CHECK(ok.state().premises.size() == 1);
  CHECK(kind_of([&] { Session::replay(changed, script + "conjE1\n"); }) == ErrorKind::ReplayMismatch);
}

TEST_CASE("a script with a backtrack replays onto the alternative") {
  Session s(fol());
  s.new_goal("cons(A, cons(A, nil)) |- A");
  s.apply("resolve asm_head, asm_tail");
  s.backtrack(1);
  CHECK(s.state().premises.size() == 1);
  Session r = Session::replay(fol(), s.script());
  CHECK(r.state().premises.size() == 1);
  CHECK(print_rule(fol()->signature, r.state()) == print_rule(fol()->signature, s.state()));
}
