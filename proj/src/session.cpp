#include "holres/session.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "holres/error.hpp"

namespace holres {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Session::Session(std::shared_ptr<const Logic> logic, SessionOptions options)
    : logic_(std::move(logic)), options_(std::move(options)) {}

void Session::new_goal(std::string_view text) {
  Term prop;
  try {
    prop = parse_term(logic_->signature, text, judgement_arity());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ArityError) throw;
    // a well-formed term of some other arity is a bad goal, not a parse error
    std::optional<Term> other;
    try {
      other = parse_term(logic_->signature, text);
    } catch (const Error&) {
    }
    if (!other) throw;
    throw Error(ErrorKind::BadArity, "a goal must have arity " + judgement_arity().to_string() + ", not " +
                                         arity_of(*other).to_string());
  }
  new_goal(prop, std::string(text));
}

void Session::new_goal(const Term& prop, std::string text) {
  Rule r = mk_rule({prop}, prop);
  state_ = std::move(r);
  goal_text_ = std::move(text);
  history_.clear();
  log_.clear();
}

const Rule& Session::state() const {
  if (!state_) throw Error(ErrorKind::EmptyHistory, "no goal");
  return *state_;
}

bool Session::has_alternative(std::size_t k) {
  if (k == 0 || k > history_.size()) return false;
  try {
    return !history_[k - 1].remainder.is_empty();
  } catch (const Error&) {
    return false;
  }
}

SearchOptions Session::search_options() const {
  SearchOptions o;
  o.max_nodes = options_.max_nodes;
  o.max_depth = options_.max_depth;
  o.unify = options_.unify;
  return o;
}

// ---------------------------------------------------------------------------
// Tactic expressions:
//   expr := seq ('ORELSE' seq)*
//   seq  := unit ('THEN' unit)*
//   unit := '(' expr ')' | resolve NAME (',' NAME)* ['at' N]
//         | repeat(expr) | try(expr) | depth_first(expr)
//         | id | fail | prolog | NAME

namespace {

struct TacticParser {
  const Session& session;
  SearchOptions search;
  std::vector<std::string> toks;
  std::size_t i = 0;

  static std::vector<std::string> lex(std::string_view s) {
    std::vector<std::string> out;
    std::size_t k = 0;
    while (k < s.size()) {
      char c = s[k];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++k;
      } else if (c == '(' || c == ')' || c == ',') {
        out.emplace_back(1, c);
        ++k;
      } else {
        std::size_t start = k;
        while (k < s.size() && !std::isspace(static_cast<unsigned char>(s[k])) && s[k] != '(' && s[k] != ')' &&
               s[k] != ',')
          ++k;
        out.emplace_back(s.substr(start, k - start));
      }
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::SyntaxError, "tactic: " + msg);
  }
  const std::string& peek() const {
    static const std::string end;
    return i < toks.size() ? toks[i] : end;
  }
  std::string take() {
    if (i >= toks.size()) fail("unexpected end");
    return toks[i++];
  }
  void expect(const std::string& t) {
    if (peek() != t) fail("expected '" + t + "'" + (peek().empty() ? "" : ", got '" + peek() + "'"));
    ++i;
  }

  Tactic parse() {
    if (toks.empty()) fail("empty tactic");
    Tactic t = expr();
    if (i != toks.size()) fail("unexpected '" + peek() + "'");
    return t;
  }

  Tactic expr() {
    Tactic t = seq();
    while (peek() == "ORELSE") {
      ++i;
      t = orelse(t, seq());
    }
    return t;
  }

  Tactic seq() {
    Tactic t = unit();
    while (peek() == "THEN") {
      ++i;
      t = then(t, unit());
    }
    return t;
  }

  Tactic wrapped() {
    expect("(");
    Tactic t = expr();
    expect(")");
    return t;
  }

  Tactic unit() {
    std::string w = take();
    if (w == "(") {
      Tactic t = expr();
      expect(")");
      return t;
    }
    const Logic& logic = session.logic();
    if (w == "resolve") {
      std::vector<std::string> names{take()};
      while (peek() == ",") {
        ++i;
        names.push_back(take());
      }
      std::size_t at = 1;
      if (peek() == "at") {
        ++i;
        std::string n = take();
        try {
          at = std::stoul(n);
        } catch (const std::exception&) {
          fail("premise number expected after 'at'");
        }
        if (at == 0) fail("premises are numbered from 1");
      }
      return rules_tac(logic.rules.select(names), at - 1, search.unify);
    }
    if (w == "repeat") return repeat(wrapped());
    if (w == "try") return try_tac(wrapped());
    if (w == "depth_first") return depth_first([](const Term&) { return false; }, wrapped(), search);
    if (w == "id") return id_tac();
    if (w == "fail") return fail_tac();
    if (w == "prolog")
      return depth_first([](const Term&) { return false; }, rules_tac(logic.rules.rules(), 0, search.unify),
                         search);
    if (auto it = logic.tactics.find(w); it != logic.tactics.end()) return it->second(search);
    if (logic.rules.find(w)) return rules_tac({logic.rules.at(w)}, 0, search.unify);
    throw Error(ErrorKind::UnknownRule, "unknown rule or tactic '" + w + "'");
  }
};

}  // namespace

Tactic Session::parse_tactic(std::string_view text) const {
  TacticParser p{*this, search_options(), TacticParser::lex(text)};
  return p.parse();
}

void Session::apply(std::string_view tactic_text) {
  const Rule& current = state();
  Tactic t = parse_tactic(tactic_text);
  Seq<Rule> results = t(current);
  const auto& first = results.pull();
  if (!first) throw Error(ErrorKind::TacticFailed, "tactic produced no results: " + std::string(tactic_text));
  history_.push_back({current, std::string(tactic_text), first->second});
  state_ = first->first;
  log_.push_back("apply " + std::string(tactic_text));
}

void Session::backtrack(std::size_t k) {
  if (k == 0 || k > history_.size())
    throw Error(ErrorKind::BacktrackExhausted,
                "no step " + std::to_string(k) + " (history has " + std::to_string(history_.size()) + ")");
  Step& step = history_[k - 1];
  const auto& next = step.remainder.pull();
  if (!next) throw Error(ErrorKind::BacktrackExhausted, "step " + std::to_string(k) + " has no more alternatives");
  Rule chosen = next->first;
  step.remainder = next->second;
  history_.resize(k);
  state_ = std::move(chosen);
  log_.push_back("backtrack " + std::to_string(k));
}

void Session::undo() {
  if (history_.empty()) throw Error(ErrorKind::EmptyHistory, "nothing to undo");
  state_ = history_.back().before;
  history_.pop_back();
  log_.push_back("undo");
}

Rule Session::qed() {
  const Rule& r = state();
  if (!r.premises.empty())
    throw Error(ErrorKind::GoalsRemain, std::to_string(r.premises.size()) + " subgoal(s) remain");
  Environment env(max_generation(r) + 1);
  env = flexflex_trivial(r.flexflex, std::move(env));
  Rule done = instantiate(env, r);
  done.flexflex.clear();
  log_.push_back("qed");
  return rename_to_generation_zero(done);
}

SkolemLegend Session::legend() const {
  SkolemLegend legend;
  if (!state_) return legend;
  print_rule(logic_->signature, *state_, true, &legend);
  return legend;
}

std::string Session::show() const {
  if (!state_) return "No goal.\n";
  const auto& sig = logic_->signature;
  bool compress = options_.compress_skolem;
  SkolemLegend legend;
  std::ostringstream out;
  out << "Goal: " << print_term(sig, state_->conclusion, compress, &legend) << "\n";
  if (state_->premises.empty()) out << "No subgoals.\n";
  for (std::size_t i = 0; i < state_->premises.size(); ++i)
    out << " " << i + 1 << ". " << print_term(sig, state_->premises[i], compress, &legend) << "\n";
  for (const auto& ff : state_->flexflex) {
    out << " constraint: " << print_term(sig, ff.lhs, compress, &legend) << " =?= "
        << print_term(sig, ff.rhs, compress, &legend) << "\n";
  }
  if (compress && !legend.empty()) out << "where\n" << print_legend(sig, legend);
  return out.str();
}

std::vector<std::pair<std::string, std::size_t>> Session::applicable_rules(std::size_t goal, std::size_t cap) const {
  const Rule& r = state();
  if (goal >= r.premises.size())
    throw Error(ErrorKind::IndexOutOfRange, "no subgoal " + std::to_string(goal + 1));
  std::vector<std::pair<std::string, std::size_t>> out;
  UnifyOptions u = options_.unify;
  u.throw_on_depth = false;
  for (const auto& nr : logic_->rules.all()) {
    std::size_t n = 0;
    try {
      n = take(resolve(r, goal, nr.rule, u), cap).size();
    } catch (const Error&) {
      n = cap;
    }
    if (n > 0) out.emplace_back(nr.name, n);
  }
  return out;
}

SolvedUnifier describe_unifier(const LogicSignature& sig, const Unifier& u, const std::vector<Term>& vars) {
  SolvedUnifier out;
  Environment env = close_unifier(u);
  for (const auto& v : vars) {
    Term value = instantiate(env, v);
    std::string name = "?" + v.name() + (v.generation() ? "." + std::to_string(v.generation()) : "");
    out.bindings.emplace_back(name, print_term(sig, value));
  }
  for (const auto& ff : u.flexflex)
    out.constraints.push_back(print_term(sig, instantiate(u.env, ff.lhs)) + " =?= " +
                              print_term(sig, instantiate(u.env, ff.rhs)));
  return out;
}

SolvePage Session::solve(std::string_view lhs, std::string_view rhs, std::size_t offset, std::size_t count) {
  if (!solve_cache_ || solve_cache_->lhs != lhs || solve_cache_->rhs != rhs) {
    ParseOptions po;
    po.auto_constants = true;
    po.same_arity = true;
    auto terms = parse_terms(logic_->signature, {std::string(lhs), std::string(rhs)}, std::nullopt, po);
    std::vector<Term> vars = collect_vars(terms[0]);
    collect_vars(terms[1], vars);
    int gen = std::max(max_generation(terms[0]), max_generation(terms[1])) + 1;
    solve_cache_ = SolveCache{std::string(lhs), std::string(rhs), vars,
                              unify(terms[0], terms[1], Environment(gen), options_.unify)};
  }
  SolvePage page;
  Seq<Unifier> cur = solve_cache_->stream;
  for (std::size_t k = 0; k < offset; ++k) {
    const auto& step = cur.pull();
    if (!step) return page;
    cur = step->second;
  }
  while (page.unifiers.size() < count) {
    const auto& step = cur.pull();
    if (!step) return page;
    page.unifiers.push_back(describe_unifier(logic_->signature, step->first, solve_cache_->vars));
    cur = step->second;
  }
  page.more = !cur.is_empty();
  return page;
}

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

std::string Session::script() const {
  std::string out = "goal " + quote(goal_text_) + "\n";
  for (const auto& line : log_) out += line + "\n";
  return out;
}

void Session::save_script(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::FileError, "cannot write " + path);
  f << script();
  if (!f) throw Error(ErrorKind::FileError, "cannot write " + path);
}

void Session::run_command(std::string_view raw) {
  std::string line = trim(raw);
  auto word_end = line.find_first_of(" \t");
  std::string cmd = line.substr(0, word_end);
  std::string rest = word_end == std::string::npos ? "" : trim(line.substr(word_end));
  if (cmd == "apply") {
    apply(rest);
  } else if (cmd == "backtrack") {
    std::size_t k = 0;
    try {
      k = std::stoul(rest);
    } catch (const std::exception&) {
      throw Error(ErrorKind::SyntaxError, "backtrack expects a step number");
    }
    backtrack(k);
  } else if (cmd == "undo") {
    undo();
  } else if (cmd == "qed") {
    qed();
  } else {
    throw Error(ErrorKind::SyntaxError, "unknown command '" + cmd + "'");
  }
}

Session Session::replay(std::shared_ptr<const Logic> logic, std::string_view script, SessionOptions options) {
  Session s(std::move(logic), std::move(options));
  std::istringstream in{std::string(script)};
  std::string line;
  std::size_t number = 0;
  bool have_goal = false;
  while (std::getline(in, line)) {
    ++number;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    try {
      if (!have_goal) {
        if (t.rfind("goal", 0) != 0) throw Error(ErrorKind::SyntaxError, "script must start with goal \"...\"");
        std::string q = trim(t.substr(4));
        if (q.size() < 2 || q.front() != '"' || q.back() != '"')
          throw Error(ErrorKind::SyntaxError, "goal text must be quoted");
        std::string text;
        for (std::size_t k = 1; k + 1 < q.size(); ++k) {
          if (q[k] == '\\' && k + 2 < q.size()) ++k;
          text += q[k];
        }
        s.new_goal(text);
        have_goal = true;
      } else {
        s.run_command(t);
      }
    } catch (const Error& e) {
      throw Error(ErrorKind::ReplayMismatch, "script line " + std::to_string(number) + " (" + t + "): " + std::string(
                                                 error_kind_name(e.kind())) + ": " + e.what());
    }
  }
  if (!have_goal) throw Error(ErrorKind::ReplayMismatch, "script has no goal line");
  return s;
}

Session Session::replay_file(std::shared_ptr<const Logic> logic, const std::string& path, SessionOptions options) {
  return replay(std::move(logic), read_text_file(path), std::move(options));
}

}  // namespace holres
