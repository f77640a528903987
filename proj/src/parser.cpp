#include <cctype>
#include <map>
#include <memory>
#include <string>

#include "holres/error.hpp"
#include "holres/logic.hpp"

namespace holres {

namespace {

const std::string_view kSymbolChars = "!#$&*+-/:;<=>@\\^|~,";

bool is_symbol_char(char c) { return kSymbolChars.find(c) != std::string_view::npos; }
bool is_ident_start(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

[[noreturn]] void syntax_error(std::size_t pos, const std::string& msg) {
  throw Error(ErrorKind::SyntaxError, "column " + std::to_string(pos + 1) + ": " + msg);
}

enum class Tok { Ident, Var, Sym, LParen, RParen, LBrack, RBrack, Percent, Dot, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos = 0;
  int generation = 0;
  std::optional<Arity> annotation = std::nullopt;
};

std::string read_balanced(std::string_view src, std::size_t& i) {
  std::size_t start = i;
  int depth = 0;
  for (; i < src.size(); ++i) {
    if (src[i] == '(') ++depth;
    if (src[i] == ')' && --depth == 0) {
      ++i;
      return std::string(src.substr(start, i - start));
    }
  }
  syntax_error(start, "unbalanced parenthesis in arity annotation");
}

std::vector<Token> lex(const LogicSignature& sig, std::string_view src) {
  std::vector<std::string> symbols{",", ":"};
  for (const auto& [sym, op] : sig.infixes)
    if (!sym.empty() && is_symbol_char(sym[0])) symbols.push_back(sym);
  for (const auto& [sym, op] : sig.postfixes)
    if (!sym.empty() && is_symbol_char(sym[0])) symbols.push_back(sym);

  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c == '?') {
      ++i;
      if (i >= src.size() || !is_ident_start(src[i])) syntax_error(start, "expected a variable name after '?'");
      while (i < src.size() && is_ident_char(src[i])) ++i;
      Token t{Tok::Var, std::string(src.substr(start + 1, i - start - 1)), start};
      if (i + 1 < src.size() && src[i] == '.' && std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
        std::size_t g = ++i;
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        t.generation = std::stoi(std::string(src.substr(g, i - g)));
      }
      if (i + 1 < src.size() && src[i] == ':' && !is_symbol_char(src[i + 1])) {
        std::size_t j = i + 1;
        if (src[j] == '(') {
          try {
            std::string text = read_balanced(src, j);
            t.annotation = sig.parse_arity(text.substr(1, text.size() - 2));
            i = j;
          } catch (const Error&) {
            // not an arity: leave ':' to the term grammar
          }
        } else if (is_ident_start(src[j])) {
          std::size_t k = j;
          while (k < src.size() && is_ident_char(src[k])) ++k;
          std::string name(src.substr(j, k - j));
          if (sig.atomic_arities.count(name)) {
            t.annotation = Arity::atomic(name);
            i = k;
          }
        }
      }
      out.push_back(std::move(t));
      continue;
    }
    if (is_ident_start(c)) {
      while (i < src.size() && is_ident_char(src[i])) ++i;
      out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), start});
      continue;
    }
    switch (c) {
      case '(': out.push_back({Tok::LParen, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", start}); ++i; continue;
      case '[': out.push_back({Tok::LBrack, "[", start}); ++i; continue;
      case ']': out.push_back({Tok::RBrack, "]", start}); ++i; continue;
      case '%': out.push_back({Tok::Percent, "%", start}); ++i; continue;
      case '.': out.push_back({Tok::Dot, ".", start}); ++i; continue;
      default: break;
    }
    if (is_symbol_char(c)) {
      std::size_t best = 0;
      for (const auto& s : symbols)
        if (s.size() > best && src.substr(i, s.size()) == s) best = s.size();
      if (best == 0) syntax_error(start, std::string("unknown operator starting with '") + c + "'");
      out.push_back({Tok::Sym, std::string(src.substr(i, best)), start});
      i += best;
      continue;
    }
    syntax_error(start, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

// ---------------------------------------------------------------------------
// Raw syntax tree, before arities are known.

struct Raw {
  enum class Kind { Const, Var, Bound, Abs, App, Param } kind;
  std::string name;
  int number = 0;  // generation or de Bruijn index
  std::optional<Arity> annotation;
  std::vector<Raw> kids;
  std::size_t pos = 0;
  int type = -1;  // inference node for Var/Const/Abs binder
};

class RawParser {
 public:
  RawParser(const LogicSignature& sig, std::vector<Token> tokens, const ParseOptions& options)
      : sig_(sig), toks_(std::move(tokens)), options_(options) {}

  Raw parse_all() {
    Raw r = expr(0);
    if (peek().kind != Tok::End) syntax_error(peek().pos, "unexpected '" + peek().text + "'");
    return r;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(idx_ + k, toks_.size() - 1)]; }
  Token take() { return toks_[idx_ < toks_.size() - 1 ? idx_++ : idx_]; }
  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) syntax_error(peek().pos, std::string("expected ") + what);
    ++idx_;
  }

  const Operator* infix_at(const Token& t) const {
    if (t.kind != Tok::Sym && t.kind != Tok::Ident) return nullptr;
    if (t.text == "," && comma_separates_) return nullptr;
    auto it = sig_.infixes.find(t.text);
    return it == sig_.infixes.end() ? nullptr : &it->second;
  }
  const Operator* postfix_at(const Token& t) const {
    if (t.kind != Tok::Sym && t.kind != Tok::Ident) return nullptr;
    auto it = sig_.postfixes.find(t.text);
    return it == sig_.postfixes.end() ? nullptr : &it->second;
  }

  static Raw make_const(const std::string& name, std::size_t pos) {
    return Raw{Raw::Kind::Const, name, 0, std::nullopt, {}, pos};
  }
  static Raw make_app(Raw f, Raw a) {
    std::size_t pos = f.pos;
    Raw r{Raw::Kind::App, {}, 0, std::nullopt, {}, pos};
    r.kids.push_back(std::move(f));
    r.kids.push_back(std::move(a));
    return r;
  }

  Raw expr(int min_prec) {
    Raw left = prefix();
    for (;;) {
      const Token& t = peek();
      if (const Operator* op = infix_at(t); op && op->precedence >= min_prec) {
        ++idx_;
        int next = op->assoc == Assoc::Right ? op->precedence : op->precedence + 1;
        Raw right = expr(next);
        left = make_app(make_app(make_const(op->constant, t.pos), std::move(left)), std::move(right));
        if (op->assoc == Assoc::None) {
          if (const Operator* again = infix_at(peek()); again && again->precedence == op->precedence)
            syntax_error(peek().pos, "non-associative operator used in a chain");
        }
        continue;
      }
      if (const Operator* op = postfix_at(t); op && op->precedence >= min_prec) {
        ++idx_;
        left = make_app(make_const(op->constant, t.pos), std::move(left));
        continue;
      }
      return left;
    }
  }

  std::vector<Raw> comma_list(Tok close, const char* what) {
    std::vector<Raw> items;
    bool saved = comma_separates_;
    comma_separates_ = true;
    if (peek().kind != close) {
      for (;;) {
        items.push_back(expr(0));
        if (peek().kind == Tok::Sym && peek().text == ",") {
          ++idx_;
          continue;
        }
        break;
      }
    }
    comma_separates_ = saved;
    expect(close, what);
    return items;
  }

  Raw applications(Raw head) {
    while (peek().kind == Tok::LParen) {
      ++idx_;
      auto args = comma_list(Tok::RParen, "')'");
      if (args.empty()) syntax_error(peek().pos, "empty argument list");
      for (auto& a : args) head = make_app(std::move(head), std::move(a));
    }
    return head;
  }

  // names [':' arity] ... '.' body; one abstraction per name
  Raw abstraction(const std::optional<std::string>& binder_const) {
    std::vector<std::pair<std::string, std::optional<Arity>>> names;
    while (peek().kind == Tok::Ident) {
      std::string n = take().text;
      std::optional<Arity> ann;
      if (peek().kind == Tok::Sym && peek().text == ":" && peek(1).kind == Tok::Ident &&
          sig_.atomic_arities.count(peek(1).text)) {
        idx_ += 2;
        ann = Arity::atomic(toks_[idx_ - 1].text);
      }
      names.emplace_back(std::move(n), std::move(ann));
    }
    if (names.empty()) syntax_error(peek().pos, "expected a bound variable name");
    expect(Tok::Dot, "'.' after bound variable names");
    for (const auto& n : names) bound_.push_back(n.first);
    bool saved = comma_separates_;
    Raw body = expr(0);
    comma_separates_ = saved;
    for (std::size_t k = 0; k < names.size(); ++k) bound_.pop_back();
    for (auto it = names.rbegin(); it != names.rend(); ++it) {
      Raw abs{Raw::Kind::Abs, it->first, 0, it->second, {}, body.pos};
      abs.kids.push_back(std::move(body));
      body = binder_const ? make_app(make_const(*binder_const, abs.pos), std::move(abs)) : std::move(abs);
    }
    return body;
  }

  Raw prefix() {
    Token t = take();
    switch (t.kind) {
      case Tok::LParen: {
        bool saved = comma_separates_;
        comma_separates_ = false;
        Raw inner = expr(0);
        comma_separates_ = saved;
        expect(Tok::RParen, "')'");
        return applications(std::move(inner));
      }
      case Tok::Percent:
        return abstraction(std::nullopt);
      case Tok::Var: {
        Raw v{Raw::Kind::Var, t.text, t.generation, t.annotation, {}, t.pos};
        return applications(std::move(v));
      }
      case Tok::Ident: {
        if (auto b = sig_.binders.find(t.text); b != sig_.binders.end() && peek().kind != Tok::LParen)
          return abstraction(b->second);
        for (std::size_t k = bound_.size(); k-- > 0;) {
          if (bound_[k] == t.text) {
            Raw r{Raw::Kind::Bound, t.text, static_cast<int>(bound_.size() - 1 - k), std::nullopt, {}, t.pos};
            return applications(std::move(r));
          }
        }
        if (peek().kind == Tok::LBrack && sig_.skolem_bases.count(t.text)) {
          ++idx_;
          auto saved_bound = std::move(bound_);
          bound_.clear();
          auto subs = comma_list(Tok::RBrack, "']'");
          bound_ = std::move(saved_bound);
          Raw p{Raw::Kind::Param, t.text, 0, std::nullopt, std::move(subs), t.pos};
          return applications(std::move(p));
        }
        if (sig_.constants.count(t.text) || options_.auto_constants)
          return applications(make_const(t.text, t.pos));
        if (sig_.skolem_bases.count(t.text)) syntax_error(t.pos, "parameter " + t.text + " needs subscripts [...]");
        throw Error(ErrorKind::UnknownConstant,
                    "column " + std::to_string(t.pos + 1) + ": unknown constant '" + t.text + "'");
      }
      case Tok::End:
        syntax_error(t.pos, "unexpected end of input");
      default:
        syntax_error(t.pos, "unexpected '" + t.text + "'");
    }
  }

  const LogicSignature& sig_;
  std::vector<Token> toks_;
  const ParseOptions& options_;
  std::size_t idx_ = 0;
  std::vector<std::string> bound_;
  bool comma_separates_ = false;
};

// ---------------------------------------------------------------------------
// First-order unification over arity expressions with metavariables.

class ArityInference {
 public:
  int meta() {
    nodes_.push_back({Node::Meta, {}, -1, -1, -1});
    return static_cast<int>(nodes_.size() - 1);
  }
  int from(const Arity& a) {
    if (a.is_atomic()) {
      nodes_.push_back({Node::Atom, a.name(), -1, -1, -1});
    } else {
      int x = from(a.argument());
      int y = from(a.result());
      nodes_.push_back({Node::Fun, {}, x, y, -1});
    }
    return static_cast<int>(nodes_.size() - 1);
  }
  int fun(int a, int b) {
    nodes_.push_back({Node::Fun, {}, a, b, -1});
    return static_cast<int>(nodes_.size() - 1);
  }

  int find(int i) const {
    while (nodes_[i].kind == Node::Meta && nodes_[i].ref >= 0) i = nodes_[i].ref;
    return i;
  }

  bool unify(int i, int j) {
    i = find(i);
    j = find(j);
    if (i == j) return true;
    Node& a = nodes_[i];
    Node& b = nodes_[j];
    if (a.kind == Node::Meta) {
      if (occurs(i, j)) return false;
      a.ref = j;
      return true;
    }
    if (b.kind == Node::Meta) return unify(j, i);
    if (a.kind != b.kind) return false;
    if (a.kind == Node::Atom) return a.atom == b.atom;
    int aa = a.a, ab = a.b, ba = b.a, bb = b.b;
    return unify(aa, ba) && unify(ab, bb);
  }

  /// nullopt if some metavariable is unresolved.
  std::optional<Arity> resolve(int i, const std::optional<std::string>& fallback) const {
    i = find(i);
    const Node& n = nodes_[i];
    switch (n.kind) {
      case Node::Atom: return Arity::atomic(n.atom);
      case Node::Meta:
        if (fallback) return Arity::atomic(*fallback);
        return std::nullopt;
      case Node::Fun: {
        auto x = resolve(n.a, fallback);
        auto y = resolve(n.b, fallback);
        if (!x || !y) return std::nullopt;
        return Arity::fun(*x, *y);
      }
    }
    return std::nullopt;
  }

  std::string show(int i) const {
    i = find(i);
    const Node& n = nodes_[i];
    if (n.kind == Node::Atom) return n.atom;
    if (n.kind == Node::Meta) return "'" + std::to_string(i);
    return "(" + show(n.a) + " -> " + show(n.b) + ")";
  }

 private:
  struct Node {
    enum Kind { Meta, Atom, Fun } kind;
    std::string atom;
    int a, b;
    int ref;
  };
  bool occurs(int meta, int i) const {
    i = find(i);
    if (i == meta) return true;
    const Node& n = nodes_[i];
    return n.kind == Node::Fun && (occurs(meta, n.a) || occurs(meta, n.b));
  }
  std::vector<Node> nodes_;
};

class Elaborator {
 public:
  Elaborator(const LogicSignature& sig, const ParseOptions& options) : sig_(sig), options_(options) {}

  int infer(Raw& r, std::vector<int>& ctx) {
    switch (r.kind) {
      case Raw::Kind::Const: {
        if (auto it = sig_.constants.find(r.name); it != sig_.constants.end()) return inf_.from(it->second);
        auto [it, inserted] = auto_consts_.emplace(r.name, -1);
        if (inserted) it->second = inf_.meta();
        r.type = it->second;
        return r.type;
      }
      case Raw::Kind::Var: {
        VarKey key{r.name, r.number};
        auto [it, inserted] = vars_.emplace(key, -1);
        if (inserted) {
          it->second = inf_.meta();
          var_order_.push_back(key);
          var_pos_[key] = r.pos;
        }
        if (r.annotation)
          constrain(it->second, inf_.from(*r.annotation), r.pos, "?" + r.name, ErrorKind::InconsistentVar);
        r.type = it->second;
        return r.type;
      }
      case Raw::Kind::Bound:
        return ctx[ctx.size() - 1 - static_cast<std::size_t>(r.number)];
      case Raw::Kind::Abs: {
        r.type = inf_.meta();
        if (r.annotation) constrain(r.type, inf_.from(*r.annotation), r.pos, r.name);
        ctx.push_back(r.type);
        int body = infer(r.kids[0], ctx);
        ctx.pop_back();
        return inf_.fun(r.type, body);
      }
      case Raw::Kind::App: {
        int f = infer(r.kids[0], ctx);
        int a = infer(r.kids[1], ctx);
        int res = inf_.meta();
        constrain(f, inf_.fun(a, res), r.kids[1].pos, "application");
        return res;
      }
      case Raw::Kind::Param: {
        std::vector<int> empty;
        for (auto& s : r.kids) infer(s, empty);
        return inf_.from(sig_.skolem_bases.at(r.name));
      }
    }
    return inf_.meta();
  }

  void constrain(int a, int b, std::size_t pos, const std::string& what, ErrorKind kind = ErrorKind::ArityError) {
    if (!inf_.unify(a, b))
      throw Error(kind, "column " + std::to_string(pos + 1) + ": arity mismatch at " + what +
                                             " (" + inf_.show(a) + " vs " + inf_.show(b) + ")");
  }

  Arity resolved(int node, std::size_t pos, const std::string& what) const {
    std::optional<std::string> fallback;
    if (options_.auto_constants) fallback = options_.default_arity;
    auto a = inf_.resolve(node, fallback);
    if (!a)
      throw Error(ErrorKind::ArityError, "column " + std::to_string(pos + 1) + ": cannot infer the arity of " +
                                             what + "; annotate it as " + what + ":arity");
    return *a;
  }

  Term build(const Raw& r) const {
    switch (r.kind) {
      case Raw::Kind::Const: {
        if (auto it = sig_.constants.find(r.name); it != sig_.constants.end())
          return Term::constant(r.name, it->second);
        return Term::constant(r.name, resolved(r.type, r.pos, r.name));
      }
      case Raw::Kind::Var:
        return Term::var(r.name, r.number, resolved(r.type, r.pos, "?" + r.name));
      case Raw::Kind::Bound:
        return Term::bound(r.number);
      case Raw::Kind::Abs:
        return Term::abs(r.name, resolved(r.type, r.pos, r.name), build(r.kids[0]));
      case Raw::Kind::App:
        return Term::app(build(r.kids[0]), build(r.kids[1]));
      case Raw::Kind::Param: {
        std::vector<Term> subs;
        for (const auto& s : r.kids) subs.push_back(build(s));
        return Term::param(r.name, std::move(subs), sig_.skolem_bases.at(r.name));
      }
    }
    return {};
  }

  ArityInference& inference() { return inf_; }

 private:
  const LogicSignature& sig_;
  const ParseOptions& options_;
  ArityInference inf_;
  std::map<VarKey, int> vars_;
  std::vector<VarKey> var_order_;
  std::map<VarKey, std::size_t> var_pos_;
  std::map<std::string, int> auto_consts_;
};

}  // namespace

std::vector<Term> parse_terms(const LogicSignature& sig, const std::vector<std::string>& sources,
                              std::optional<Arity> expected, const ParseOptions& options) {
  std::vector<Raw> raws;
  for (const auto& s : sources) raws.push_back(RawParser(sig, lex(sig, s), options).parse_all());
  Elaborator el(sig, options);
  std::optional<int> common;
  for (auto& r : raws) {
    std::vector<int> ctx;
    int t = el.infer(r, ctx);
    if (expected) el.constrain(t, el.inference().from(*expected), r.pos, "top level");
    if (options.same_arity) {
      if (common) el.constrain(*common, t, r.pos, "top level");
      common = t;
    }
  }
  std::vector<Term> out;
  for (const auto& r : raws) out.push_back(el.build(r));
  for (const auto& t : out) arity_of(t);
  return out;
}

Term parse_term(const LogicSignature& sig, std::string_view src, std::optional<Arity> expected,
                const ParseOptions& options) {
  return parse_terms(sig, {std::string(src)}, std::move(expected), options).front();
}

// ---------------------------------------------------------------------------

void LogicSignature::declare_arity(const std::string& name) { atomic_arities.insert(name); }

void LogicSignature::declare_constant(const std::string& name, Arity arity) {
  constants.insert_or_assign(name, std::move(arity));
}

void LogicSignature::declare_infix(const std::string& symbol, const std::string& constant, int precedence,
                                   Assoc assoc) {
  auto it = constants.find(constant);
  if (it == constants.end() || it->second.spine_arguments().size() < 2)
    throw Error(ErrorKind::ArityError, "infix " + symbol + " needs a declared binary constant " + constant);
  infixes.insert_or_assign(symbol, Operator{constant, precedence, assoc});
}

void LogicSignature::declare_postfix(const std::string& symbol, const std::string& constant, int precedence) {
  auto it = constants.find(constant);
  if (it == constants.end() || !it->second.is_fun())
    throw Error(ErrorKind::ArityError, "postfix " + symbol + " needs a declared unary constant " + constant);
  postfixes.insert_or_assign(symbol, Operator{constant, precedence, Assoc::None});
}

void LogicSignature::declare_binder(const std::string& keyword, const std::string& constant) {
  auto it = constants.find(constant);
  if (it == constants.end() || !it->second.is_fun() || !it->second.argument().is_fun())
    throw Error(ErrorKind::ArityError, "binder " + keyword + " needs a constant of arity (a -> b) -> c");
  binders.insert_or_assign(keyword, constant);
}

void LogicSignature::declare_skolem(const std::string& base, Arity arity) {
  skolem_bases.insert_or_assign(base, std::move(arity));
}

Arity LogicSignature::parse_arity(std::string_view text) const {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  std::function<Arity()> arrow;
  std::function<Arity()> atom = [&]() -> Arity {
    skip();
    if (i < text.size() && text[i] == '(') {
      ++i;
      Arity a = arrow();
      skip();
      if (i >= text.size() || text[i] != ')') syntax_error(i, "expected ')' in arity");
      ++i;
      return a;
    }
    std::size_t start = i;
    while (i < text.size() && is_ident_char(text[i])) ++i;
    if (start == i) syntax_error(start, "expected an arity");
    std::string name(text.substr(start, i - start));
    if (!atomic_arities.count(name))
      throw Error(ErrorKind::ArityError, "undeclared atomic arity '" + name + "'");
    return Arity::atomic(name);
  };
  arrow = [&]() -> Arity {
    Arity left = atom();
    skip();
    if (text.substr(i, 2) == "->") {
      i += 2;
      return Arity::fun(left, arrow());
    }
    return left;
  };
  Arity a = arrow();
  skip();
  if (i != text.size()) syntax_error(i, "trailing text in arity");
  return a;
}

}  // namespace holres
