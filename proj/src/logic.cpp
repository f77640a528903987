#include <sstream>

#include "holres/error.hpp"
#include "holres/logic.hpp"

namespace holres {

void RuleSet::add(NamedRule r) {
  if (find(r.name)) throw Error(ErrorKind::DuplicateRuleName, "duplicate rule name '" + r.name + "'");
  rules_.push_back(std::move(r));
}

const Rule* RuleSet::find(std::string_view name) const {
  for (const auto& r : rules_)
    if (r.name == name) return &r.rule;
  return nullptr;
}

const Rule& RuleSet::at(std::string_view name) const {
  if (const Rule* r = find(name)) return *r;
  throw Error(ErrorKind::UnknownRule, "unknown rule '" + std::string(name) + "'");
}

std::vector<Rule> RuleSet::rules() const {
  std::vector<Rule> out;
  for (const auto& r : rules_) out.push_back(r.rule);
  return out;
}

std::vector<Rule> RuleSet::select(const std::vector<std::string>& names) const {
  std::vector<Rule> out;
  for (const auto& n : names) out.push_back(at(n));
  return out;
}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> words;  // quoted strings arrive unescaped
  std::vector<bool> quoted;
};

[[noreturn]] void file_error(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ": " + msg);
}

Line split_line(std::string_view text, std::size_t number) {
  Line out{number, {}, {}};
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '#' && out.words.empty()) {
      break;
    } else if (c == '"') {
      std::string s;
      ++i;
      bool closed = false;
      while (i < text.size()) {
        if (text[i] == '\\' && i + 1 < text.size()) {
          s += text[i + 1];
          i += 2;
        } else if (text[i] == '"') {
          closed = true;
          ++i;
          break;
        } else {
          s += text[i++];
        }
      }
      if (!closed) file_error(number, "unterminated string");
      out.words.push_back(std::move(s));
      out.quoted.push_back(true);
    } else {
      std::size_t start = i;
      while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r') ++i;
      out.words.emplace_back(text.substr(start, i - start));
      out.quoted.push_back(false);
    }
  }
  return out;
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    Line l = split_line(text.substr(pos, end - pos), ++number);
    if (!l.words.empty()) lines.push_back(std::move(l));
    pos = end + 1;
  }
  return lines;
}

std::string rest_after(const Line& l, std::size_t from) {
  std::string s;
  for (std::size_t i = from; i < l.words.size(); ++i) s += (i > from ? " " : "") + l.words[i];
  return s;
}

Assoc parse_assoc(const Line& l, const std::string& w) {
  if (w == "left") return Assoc::Left;
  if (w == "right") return Assoc::Right;
  if (w == "none") return Assoc::None;
  file_error(l.number, "associativity must be left, right or none");
}

int parse_int(const Line& l, const std::string& w) {
  try {
    std::size_t used = 0;
    int v = std::stoi(w, &used);
    if (used == w.size()) return v;
  } catch (const std::exception&) {
  }
  file_error(l.number, "expected a number, got '" + w + "'");
}

struct PendingRule {
  std::size_t line;
  std::string name;
  std::vector<std::string> premises;
  std::optional<std::string> conclusion;
};

NamedRule finish(const LogicSignature& sig, const PendingRule& p) {
  if (!p.conclusion) file_error(p.line, "rule " + p.name + " has no conclusion");
  try {
    std::vector<std::string> texts = p.premises;
    texts.push_back(*p.conclusion);
    auto terms = parse_terms(sig, texts, judgement_arity());
    Term concl = terms.back();
    terms.pop_back();
    return NamedRule{p.name, mk_rule(std::move(terms), std::move(concl)), p.premises, *p.conclusion};
  } catch (const Error& e) {
    throw Error(e.kind(), "rule " + p.name + " (line " + std::to_string(p.line) + "): " + e.what());
  }
}

// Shared by load_logic and load_rules; `declarations` enables signature lines.
void load_into(Logic& logic, std::string_view text, bool declarations) {
  std::optional<PendingRule> pending;
  auto flush = [&] {
    if (pending) logic.rules.add(finish(logic.signature, *pending));
    pending.reset();
  };
  auto& sig = logic.signature;
  for (const Line& l : split_lines(text)) {
    const std::string& kw = l.words[0];
    auto need = [&](std::size_t n) {
      if (l.words.size() < n) file_error(l.number, "too few fields for '" + kw + "'");
    };
    try {
      if (kw == "rule") {
        need(2);
        flush();
        pending = PendingRule{l.number, l.words[1], {}, std::nullopt};
      } else if (kw == "premise" || kw == "conclusion") {
        if (!pending) file_error(l.number, kw + " outside a rule");
        if (l.words.size() != 2 || !l.quoted[1]) file_error(l.number, kw + " expects one quoted term");
        if (kw == "premise") {
          if (pending->conclusion) file_error(l.number, "premise after conclusion");
          pending->premises.push_back(l.words[1]);
        } else {
          if (pending->conclusion) file_error(l.number, "second conclusion");
          pending->conclusion = l.words[1];
        }
      } else if (!declarations) {
        file_error(l.number, "unexpected '" + kw + "' in a rules-only file");
      } else if (kw == "logic") {
        need(2);
        logic.name = l.words[1];
      } else if (kw == "arity") {
        need(2);
        for (std::size_t i = 1; i < l.words.size(); ++i) sig.declare_arity(l.words[i]);
      } else if (kw == "const" || kw == "skolem") {
        std::size_t colon = 0;
        for (std::size_t i = 1; i < l.words.size(); ++i)
          if (l.words[i] == ":" && !l.quoted[i]) {
            colon = i;
            break;
          }
        if (colon < 2 || colon + 1 >= l.words.size()) file_error(l.number, kw + " NAME... : ARITY");
        Arity a = sig.parse_arity(rest_after(l, colon + 1));
        for (std::size_t i = 1; i < colon; ++i) {
          if (kw == "const") sig.declare_constant(l.words[i], a);
          else sig.declare_skolem(l.words[i], a);
        }
      } else if (kw == "infix") {
        need(5);
        sig.declare_infix(l.words[1], l.words[2], parse_int(l, l.words[3]), parse_assoc(l, l.words[4]));
      } else if (kw == "postfix") {
        need(4);
        sig.declare_postfix(l.words[1], l.words[2], parse_int(l, l.words[3]));
      } else if (kw == "binder") {
        need(3);
        sig.declare_binder(l.words[1], l.words[2]);
      } else {
        file_error(l.number, "unknown directive '" + kw + "'");
      }
    } catch (const Error& e) {
      std::string_view msg = e.what();
      if (msg.starts_with("line ") || msg.starts_with("rule ")) throw;
      throw Error(e.kind(), "line " + std::to_string(l.number) + ": " + e.what());
    }
  }
  flush();
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Logic load_logic(std::string_view text, Logic base) {
  load_into(base, text, true);
  return base;
}

RuleSet load_rules(const LogicSignature& sig, std::string_view text) {
  Logic l;
  l.signature = sig;
  load_into(l, text, false);
  return l.rules;
}

std::string print_rule_file(const LogicSignature& sig, const RuleSet& rules) {
  std::string out;
  for (const auto& r : rules.all()) {
    out += "rule " + r.name + "\n";
    for (const auto& p : r.rule.premises) out += "premise " + quote(print_term(sig, p)) + "\n";
    out += "conclusion " + quote(print_term(sig, r.rule.conclusion)) + "\n\n";
  }
  return out;
}

}  // namespace holres
