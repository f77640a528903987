#include <set>
#include <sstream>

#include "holres/logic.hpp"

namespace holres {

std::string SkolemLegend::name_of(const Term& p) {
  for (const auto& e : entries_)
    if (aconv(e.param, p)) return e.short_name;
  std::string name = p.name() + "#" + std::to_string(++counters_[p.name()]);
  entries_.push_back({name, p});
  return name;
}

namespace {

constexpr int kAtomPrec = 1000;

class Printer {
 public:
  Printer(const LogicSignature& sig, bool compress, SkolemLegend* legend)
      : sig_(sig), compress_(compress), legend_(legend) {
    for (const auto& [sym, op] : sig.infixes) infix_.emplace(op.constant, std::make_pair(sym, op));
    for (const auto& [sym, op] : sig.postfixes) postfix_.emplace(op.constant, std::make_pair(sym, op));
    for (const auto& [key, c] : sig.binders) binder_.emplace(c, key);
    for (const auto& [name, a] : sig.constants) reserved_.insert(name);
    for (const auto& [key, c] : sig.binders) reserved_.insert(key);
    for (const auto& [name, a] : sig.skolem_bases) reserved_.insert(name);
    for (const auto& [sym, op] : sig.infixes) reserved_.insert(sym);
    for (const auto& [sym, op] : sig.postfixes) reserved_.insert(sym);
    if (auto it = sig.infixes.find(","); it != sig.infixes.end()) comma_prec_ = it->second.precedence;
  }

  // min_prec: weakest operator that may appear unparenthesized.
  // tail: nothing follows on the right, so a binder body may extend freely.
  // in_args: a bare comma would be read as an argument separator.
  std::string print(const Term& t, int min_prec, bool tail, bool in_args) {
    switch (t.kind()) {
      case TermKind::Const: return t.name();
      case TermKind::Var:
        return "?" + t.name() + (t.generation() ? "." + std::to_string(t.generation()) : "");
      case TermKind::Bound: {
        std::size_t i = static_cast<std::size_t>(t.index());
        if (i >= names_.size()) return "<loose" + std::to_string(i - names_.size()) + ">";
        return names_[names_.size() - 1 - i];
      }
      case TermKind::Param: return param(t);
      case TermKind::Abs: {
        std::string prefix = "%";
        Term body = t;
        std::size_t pushed = 0;
        while (body.is_abs()) {
          std::string n = fresh(body.name());
          prefix += (pushed ? " " : "") + n;
          names_.push_back(n);
          ++pushed;
          body = body.body();
        }
        bool wrap = !tail;
        std::string s = prefix + ". " + print(body, 0, true, in_args && !wrap);
        names_.resize(names_.size() - pushed);
        return wrap ? "(" + s + ")" : s;
      }
      case TermKind::App: return application(t, min_prec, tail, in_args);
    }
    return "?";
  }

 private:
  std::string fresh(const std::string& hint) {
    std::string base = hint.empty() ? "x" : hint;
    auto clash = [&](const std::string& n) {
      if (reserved_.count(n)) return true;
      for (const auto& m : names_)
        if (m == n) return true;
      return false;
    };
    if (!clash(base)) return base;
    for (int k = 1;; ++k) {
      std::string n = base + std::to_string(k);
      if (!clash(n)) return n;
    }
  }

  std::string param(const Term& p) {
    if (compress_ && legend_) return legend_->name_of(p);
    std::vector<std::string> saved;
    saved.swap(names_);
    std::string s = p.name() + "[";
    for (std::size_t i = 0; i < p.subscripts().size(); ++i)
      s += (i ? "," : "") + print(p.subscripts()[i], comma_floor(), true, true);
    names_.swap(saved);
    return s + "]";
  }

  int comma_floor() const { return comma_prec_ ? *comma_prec_ + 1 : 0; }

  std::string application(const Term& t, int min_prec, bool tail, bool in_args) {
    auto [head, args] = strip_comb(t);
    if (head.is_const()) {
      if (auto b = binder_.find(head.name()); b != binder_.end() && args.size() == 1 && args[0].is_abs()) {
        std::string n = fresh(args[0].name());
        names_.push_back(n);
        bool wrap = !tail;
        std::string s = b->second + " " + n + ". " + print(args[0].body(), 0, true, in_args && !wrap);
        names_.pop_back();
        return wrap ? "(" + s + ")" : s;
      }
      if (auto f = infix_.find(head.name()); f != infix_.end() && args.size() == 2) {
        const auto& [sym, op] = f->second;
        bool wrap = op.precedence < min_prec || (sym == "," && in_args);
        bool inner_args = in_args && !wrap;
        int lp = op.assoc == Assoc::Left ? op.precedence : op.precedence + 1;
        int rp = op.assoc == Assoc::Right ? op.precedence : op.precedence + 1;
        std::string l = print(args[0], lp, false, inner_args);
        std::string r = print(args[1], rp, tail || wrap, inner_args);
        std::string s = sym == "," ? l + ", " + r : l + " " + sym + " " + r;
        return wrap ? "(" + s + ")" : s;
      }
      if (auto f = postfix_.find(head.name()); f != postfix_.end() && args.size() == 1) {
        const auto& [sym, op] = f->second;
        bool wrap = op.precedence < min_prec;
        std::string s = print(args[0], op.precedence + 1, false, in_args && !wrap) + " " + sym;
        return wrap ? "(" + s + ")" : s;
      }
    }
    std::string s = print(head, kAtomPrec, false, in_args);
    if (head.is_abs() || head.is_app()) s = "(" + s + ")";
    s += "(";
    for (std::size_t i = 0; i < args.size(); ++i)
      s += (i ? ", " : "") + print(args[i], comma_floor(), true, true);
    return s + ")";
  }

  const LogicSignature& sig_;
  bool compress_;
  SkolemLegend* legend_;
  std::map<std::string, std::pair<std::string, Operator>> infix_, postfix_;
  std::map<std::string, std::string> binder_;
  std::set<std::string> reserved_;
  std::vector<std::string> names_;
  std::optional<int> comma_prec_;
};

}  // namespace

std::string print_term(const LogicSignature& sig, const Term& t, bool compress_skolem, SkolemLegend* legend) {
  SkolemLegend local;
  Printer p(sig, compress_skolem, legend ? legend : &local);
  return p.print(t, 0, true, false);
}

std::string print_legend(const LogicSignature& sig, SkolemLegend& legend) {
  std::string out;
  // Printing an entry may allocate new entries for nested parameters.
  for (std::size_t i = 0; i < legend.entries().size(); ++i) {
    auto entry = legend.entries()[i];
    out += entry.short_name + " = " + print_term(sig, entry.param, false) + "\n";
  }
  return out;
}

std::string print_rule(const LogicSignature& sig, const Rule& r, bool compress_skolem, SkolemLegend* legend) {
  SkolemLegend local;
  SkolemLegend* l = legend ? legend : &local;
  std::string out;
  if (!r.premises.empty()) {
    out += "[";
    for (std::size_t i = 0; i < r.premises.size(); ++i)
      out += (i ? "; " : "") + print_term(sig, r.premises[i], compress_skolem, l);
    out += "] / ";
  }
  out += print_term(sig, r.conclusion, compress_skolem, l);
  return out;
}

}  // namespace holres
