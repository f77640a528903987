#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "holres/rule.hpp"
#include "holres/tactic.hpp"
#include "holres/term.hpp"

namespace holres {

enum class Assoc { Left, Right, None };

struct Operator {
  std::string constant;
  int precedence = 0;
  Assoc assoc = Assoc::Left;
};

/// Syntax and constants of one object logic.
struct LogicSignature {
  std::set<std::string> atomic_arities{"prop"};
  std::map<std::string, Arity> constants;
  std::map<std::string, Operator> infixes;    // symbol -> operator
  std::map<std::string, Operator> postfixes;  // symbol -> operator
  std::map<std::string, std::string> binders;  // keyword -> constant
  std::map<std::string, Arity> skolem_bases;

  void declare_arity(const std::string& name);
  void declare_constant(const std::string& name, Arity arity);
  void declare_infix(const std::string& symbol, const std::string& constant, int precedence, Assoc assoc);
  void declare_postfix(const std::string& symbol, const std::string& constant, int precedence);
  void declare_binder(const std::string& keyword, const std::string& constant);
  void declare_skolem(const std::string& base, Arity arity);

  /// Parses `a -> b`, `(a -> b) -> c` over declared atomic arities.
  Arity parse_arity(std::string_view text) const;
};

struct ParseOptions {
  /// Undeclared identifiers become constants whose arity is inferred;
  /// anything left unconstrained gets `default_arity`.
  bool auto_constants = false;
  std::string default_arity = "i";
  /// parse_terms only: all texts must have one common arity.
  bool same_arity = false;
};

Term parse_term(const LogicSignature& sig, std::string_view src, std::optional<Arity> expected = {},
                const ParseOptions& options = {});
/// Parses several texts that share scheme variables (one rule, or both sides
/// of an equation). Arities are inferred jointly.
std::vector<Term> parse_terms(const LogicSignature& sig, const std::vector<std::string>& sources,
                              std::optional<Arity> expected = {}, const ParseOptions& options = {});

/// Print-compression table: each distinct parameter becomes base#k.
class SkolemLegend {
 public:
  /// Returns the short name of p, allocating one on first sight.
  std::string name_of(const Term& p);
  struct Entry {
    std::string short_name;
    Term param;
  };
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
  std::map<std::string, int> counters_;
};

std::string print_term(const LogicSignature& sig, const Term& t, bool compress_skolem = false,
                       SkolemLegend* legend = nullptr);
/// Text of the legend: one `base#k = base[...]` line per parameter.
std::string print_legend(const LogicSignature& sig, SkolemLegend& legend);
std::string print_rule(const LogicSignature& sig, const Rule& r, bool compress_skolem = false,
                       SkolemLegend* legend = nullptr);

struct NamedRule {
  std::string name;
  Rule rule;
  std::vector<std::string> premise_texts;
  std::string conclusion_text;
};

class RuleSet {
 public:
  void add(NamedRule r);
  const Rule* find(std::string_view name) const;
  const Rule& at(std::string_view name) const;
  const std::vector<NamedRule>& all() const { return rules_; }
  std::vector<Rule> rules() const;
  std::vector<Rule> select(const std::vector<std::string>& names) const;
  std::size_t size() const { return rules_.size(); }

 private:
  std::vector<NamedRule> rules_;
};

/// A tactic available by name in a logic; built from the session's bounds.
using TacticFactory = std::function<Tactic(const SearchOptions&)>;

struct Logic {
  std::string name;
  LogicSignature signature;
  RuleSet rules;
  std::map<std::string, TacticFactory> tactics;
};

/// Rule-file declarations and rules. Declarations extend `base`'s signature.
Logic load_logic(std::string_view text, Logic base = {});
/// Rules only, against a fixed signature.
RuleSet load_rules(const LogicSignature& sig, std::string_view text);
/// Rule-file text for a rule set (rules only), canonical printing.
std::string print_rule_file(const LogicSignature& sig, const RuleSet& rules);

}  // namespace holres
