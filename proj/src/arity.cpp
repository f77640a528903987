#include "holres/arity.hpp"

#include "holres/error.hpp"

namespace holres {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IllAritied: return "IllAritied";
    case ErrorKind::BadArity: return "BadArity";
    case ErrorKind::InconsistentVar: return "InconsistentVar";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownConstant: return "UnknownConstant";
    case ErrorKind::ArityError: return "ArityError";
    case ErrorKind::DuplicateRuleName: return "DuplicateRuleName";
    case ErrorKind::UnknownRule: return "UnknownRule";
    case ErrorKind::TacticFailed: return "TacticFailed";
    case ErrorKind::BacktrackExhausted: return "BacktrackExhausted";
    case ErrorKind::EmptyHistory: return "EmptyHistory";
    case ErrorKind::GoalsRemain: return "GoalsRemain";
    case ErrorKind::ReplayMismatch: return "ReplayMismatch";
    case ErrorKind::FileError: return "FileError";
    case ErrorKind::ProtocolError: return "ProtocolError";
  }
  return "Unknown";
}

Arity Arity::atomic(std::string name) {
  Arity a;
  a.node_ = std::make_shared<const Node>(Node{std::move(name), {}, {}});
  return a;
}

Arity Arity::fun(Arity argument, Arity result) {
  Arity a;
  a.node_ = std::make_shared<const Node>(Node{{}, std::move(argument), std::move(result)});
  return a;
}

Arity Arity::curried(const std::vector<Arity>& arguments, Arity result) {
  Arity a = std::move(result);
  for (auto it = arguments.rbegin(); it != arguments.rend(); ++it) a = fun(*it, a);
  return a;
}

std::vector<Arity> Arity::spine_arguments() const {
  std::vector<Arity> out;
  const Arity* a = this;
  while (a->is_fun()) {
    out.push_back(a->argument());
    a = &a->result();
  }
  return out;
}

Arity Arity::spine_result() const {
  const Arity* a = this;
  while (a->is_fun()) a = &a->result();
  return *a;
}

std::string Arity::to_string() const {
  if (!node_) return "<invalid>";
  if (is_atomic()) return name();
  std::string arg = argument().to_string();
  if (argument().is_fun()) arg = "(" + arg + ")";
  return arg + " -> " + result().to_string();
}

bool operator==(const Arity& a, const Arity& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.is_atomic() != b.is_atomic()) return false;
  if (a.is_atomic()) return a.name() == b.name();
  return a.argument() == b.argument() && a.result() == b.result();
}

}  // namespace holres
