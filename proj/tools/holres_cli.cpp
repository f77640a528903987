#include <CLI11.hpp>

#include <iostream>
#include <memory>

#include "holres/error.hpp"
#include "holres/fixtures.hpp"
#include "holres/protocol.hpp"
#include "holres/session.hpp"

using namespace holres;

namespace {

std::shared_ptr<const Logic> resolve_logic(const std::string& spec) {
  if (auto l = builtin_logic(spec)) return std::make_shared<const Logic>(std::move(*l));
  return std::make_shared<const Logic>(load_logic(read_text_file(spec)));
}

void print_unifiers(const SolvePage& page, std::size_t first) {
  for (std::size_t i = 0; i < page.unifiers.size(); ++i) {
    std::cout << "unifier " << first + i << ":\n";
    for (const auto& [v, t] : page.unifiers[i].bindings) std::cout << "  " << v << " = " << t << "\n";
    for (const auto& c : page.unifiers[i].constraints) std::cout << "  constraint " << c << "\n";
  }
  if (page.unifiers.empty()) std::cout << "no (more) unifiers\n";
  else if (page.more) std::cout << "(more)\n";
}

const char* kReplHelp =
    "commands:\n"
    "  goal TEXT            start a proof\n"
    "  apply TACTIC         e.g. apply resolve impI   apply auto   apply depth_first(resolve a,b)\n"
    "  backtrack K          next alternative of step K, dropping later steps\n"
    "  undo | qed | show | history | script | save PATH\n"
    "  rules N              unifier counts of every rule against subgoal N\n"
    "  solve LHS =?= RHS    list unifiers; 'more' for the next page\n"
    "  quit\n";

int repl(std::shared_ptr<const Logic> logic, SessionOptions options) {
  Session s(logic, options);
  std::string lhs, rhs;
  std::size_t solved = 0;
  std::cout << "holres (" << logic->name << "), " << logic->rules.size() << " rules. Type help.\n";
  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    auto sp = line.find(' ');
    std::string cmd = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : line.substr(sp + 1);
    try {
      if (cmd.empty() || cmd[0] == '#') continue;
      if (cmd == "quit" || cmd == "exit") break;
      if (cmd == "help") {
        std::cout << kReplHelp;
      } else if (cmd == "goal") {
        s.new_goal(rest);
        std::cout << s.show();
      } else if (cmd == "apply" || cmd == "backtrack" || cmd == "undo") {
        s.run_command(line);
        std::cout << s.show();
      } else if (cmd == "qed") {
        std::cout << "theorem: " << print_rule(logic->signature, s.qed()) << "\n";
      } else if (cmd == "show") {
        std::cout << s.show();
      } else if (cmd == "history") {
        for (std::size_t i = 0; i < s.history().size(); ++i)
          std::cout << " " << i + 1 << ". " << s.history()[i].command
                    << (s.has_alternative(i + 1) ? "  [more]" : "") << "\n";
      } else if (cmd == "script") {
        std::cout << s.script();
      } else if (cmd == "save") {
        s.save_script(rest);
      } else if (cmd == "rules") {
        std::size_t n = rest.empty() ? 1 : std::stoul(rest);
        for (const auto& [name, count] : s.applicable_rules(n - 1))
          if (count) std::cout << "  " << name << " (" << count << ")\n";
      } else if (cmd == "solve") {
        auto at = rest.find("=?=");
        if (at == std::string::npos) throw Error(ErrorKind::SyntaxError, "usage: solve LHS =?= RHS");
        lhs = rest.substr(0, at);
        rhs = rest.substr(at + 3);
        solved = 0;
        SolvePage p = s.solve(lhs, rhs, 0, 5);
        print_unifiers(p, 1);
        solved = p.unifiers.size();
      } else if (cmd == "more") {
        SolvePage p = s.solve(lhs, rhs, solved, 5);
        print_unifiers(p, solved + 1);
        solved += p.unifiers.size();
      } else {
        std::cout << "unknown command; type help\n";
      }
    } catch (const Error& e) {
      std::cout << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    } catch (const std::exception& e) {
      std::cout << "error: " << e.what() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holres: a generic resolution prover over typed lambda terms"};
  app.require_subcommand(1);
  std::string logic_spec = "fol";
  std::optional<std::size_t> depth;
  std::size_t nodes = 10000;
  bool no_compress = false;
  app.add_option("--logic", logic_spec, "fol, ctt, or a rule file")->capture_default_str();
  app.add_option("--depth", depth, "depth limit for depth-first tactics");
  app.add_option("--nodes", nodes, "search node budget")->capture_default_str();
  app.add_flag("--no-skolem-compress", no_compress, "print parameters in full");

  auto* repl_cmd = app.add_subcommand("repl", "interactive goal package");
  auto* check_cmd = app.add_subcommand("check", "replay a proof script against a rule file");
  std::string rule_file, script_file;
  check_cmd->add_option("rulefile", rule_file, "rule file (extends --logic when that names a built-in logic)")
      ->required();
  check_cmd->add_option("scriptfile", script_file, "proof script")->required();
  auto* solve_cmd = app.add_subcommand("solve", "list unifiers of two terms");
  std::string lhs, rhs;
  std::size_t count = 10;
  solve_cmd->add_option("lhs", lhs)->required();
  solve_cmd->add_option("rhs", rhs)->required();
  solve_cmd->add_option("--count", count, "maximum number of unifiers")->capture_default_str();
  auto* rules_cmd = app.add_subcommand("rules", "print the --logic rule file in canonical form");
  auto* serve_cmd = app.add_subcommand("serve", "protocol server on 127.0.0.1");
  int port = 7411;
  serve_cmd->add_option("--port", port)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  SessionOptions options;
  options.max_nodes = nodes;
  options.max_depth = depth;
  options.compress_skolem = !no_compress;
  try {
    if (*repl_cmd) return repl(resolve_logic(logic_spec), options);
    if (*check_cmd) {
      Logic base;
      if (auto b = builtin_logic(logic_spec)) base = std::move(*b);
      auto logic = std::make_shared<const Logic>(load_logic(read_text_file(rule_file), std::move(base)));
      Session s = Session::replay_file(logic, script_file, options);
      std::cout << s.show();
      if (s.state().premises.empty()) std::cout << "theorem: " << print_rule(logic->signature, s.qed()) << "\n";
      return 0;
    }
    if (*solve_cmd) {
      Session s(resolve_logic(logic_spec), options);
      print_unifiers(s.solve(lhs, rhs, 0, count), 1);
      return 0;
    }
    if (*rules_cmd) {
      auto logic = resolve_logic(logic_spec);
      std::cout << print_rule_file(logic->signature, logic->rules);
      return 0;
    }
    if (*serve_cmd) {
      serve(port, options, [](int p) { std::cerr << "listening on 127.0.0.1:" << p << std::endl; });
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
