#pragma once

#include <memory>
#include <string>
#include <vector>

namespace holres {

/// Simple type of the syntactic framework: an atomic name or a function
/// arity. Immutable, shared, compared structurally.
class Arity {
 public:
  Arity() = default;

  static Arity atomic(std::string name);
  static Arity fun(Arity argument, Arity result);
  /// a1 -> a2 -> ... -> result
  static Arity curried(const std::vector<Arity>& arguments, Arity result);

  bool valid() const noexcept { return node_ != nullptr; }
  bool is_atomic() const noexcept;
  bool is_fun() const noexcept;

  const std::string& name() const;
  const Arity& argument() const;
  const Arity& result() const;

  /// Argument arities along the spine, outermost first.
  std::vector<Arity> spine_arguments() const;
  /// Atomic arity at the end of the spine.
  Arity spine_result() const;

  std::string to_string() const;

  friend bool operator==(const Arity& a, const Arity& b);
  friend bool operator!=(const Arity& a, const Arity& b) { return !(a == b); }

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

struct Arity::Node {
  std::string name;
  Arity argument;
  Arity result;
};

inline bool Arity::is_atomic() const noexcept { return node_ && !node_->argument.node_; }
inline bool Arity::is_fun() const noexcept { return node_ && node_->argument.node_; }
inline const std::string& Arity::name() const { return node_->name; }
inline const Arity& Arity::argument() const { return node_->argument; }
inline const Arity& Arity::result() const { return node_->result; }

}  // namespace holres
