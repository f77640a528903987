#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace holres {

/// Lazy, memoized, possibly infinite sequence. Each cell is computed at most
/// once, so a Seq can be held and re-read (the goal package keeps the
/// unconsumed tail of a tactic's output this way). Single consumer.
template <class T>
class Seq {
 public:
  using Step = std::optional<std::pair<T, Seq<T>>>;
  using Thunk = std::function<Step()>;

  Seq() = default;
  explicit Seq(Thunk thunk) : cell_(std::make_shared<Cell>(Cell{std::move(thunk), std::nullopt})) {}

  static Seq empty() { return Seq(); }
  static Seq single(T value) { return cons(std::move(value), Seq()); }
  static Seq cons(T head, Seq tail) {
    Seq s;
    s.cell_ = std::make_shared<Cell>(Cell{nullptr, Step(std::in_place, std::move(head), std::move(tail))});
    return s;
  }
  static Seq from_vector(std::vector<T> items) {
    Seq s;
    for (auto it = items.rbegin(); it != items.rend(); ++it) s = cons(std::move(*it), s);
    return s;
  }

  /// Forces one cell: nullopt at the end, otherwise (head, tail).
  const Step& pull() const {
    static const Step end;
    if (!cell_) return end;
    if (!cell_->value) {
      Step step = cell_->thunk();
      cell_->value = std::move(step);
      cell_->thunk = nullptr;
    }
    return *cell_->value;
  }

  bool is_empty() const { return !pull().has_value(); }

 private:
  struct Cell {
    Thunk thunk;
    std::optional<Step> value;
  };
  std::shared_ptr<Cell> cell_;
};

/// Generator adaptor: `next` is called on demand and returns nullopt at the end.
template <class T>
Seq<T> seq_from_generator(std::function<std::optional<T>()> next) {
  auto gen = std::make_shared<std::function<std::optional<T>()>>(std::move(next));
  struct Rec {
    static Seq<T> make(std::shared_ptr<std::function<std::optional<T>()>> g) {
      return Seq<T>([g]() -> typename Seq<T>::Step {
        auto v = (*g)();
        if (!v) return std::nullopt;
        return typename Seq<T>::Step(std::in_place, std::move(*v), make(g));
      });
    }
  };
  return Rec::make(std::move(gen));
}

/// a followed by the sequence produced by `rest` (called only when a ends).
template <class T>
Seq<T> append_lazy(Seq<T> a, std::function<Seq<T>()> rest) {
  return Seq<T>([a, rest]() -> typename Seq<T>::Step {
    const auto& step = a.pull();
    if (step) return typename Seq<T>::Step(std::in_place, step->first, append_lazy(step->second, rest));
    return rest().pull();
  });
}

template <class T>
Seq<T> append(Seq<T> a, Seq<T> b) {
  return append_lazy<T>(std::move(a), [b] { return b; });
}

/// Concatenation of f(x) over x in s, lazily. Runs of empty f(x) are skipped
/// iteratively.
template <class T, class U>
Seq<U> flat_map(Seq<T> s, std::function<Seq<U>(const T&)> f) {
  return Seq<U>([s, f]() -> typename Seq<U>::Step {
    Seq<T> cur = s;
    for (;;) {
      const auto& step = cur.pull();
      if (!step) return std::nullopt;
      Seq<U> inner = f(step->first);
      const auto& istep = inner.pull();
      if (istep) {
        Seq<T> rest = step->second;
        return typename Seq<U>::Step(std::in_place, istep->first,
                                     append_lazy<U>(istep->second, [rest, f] { return flat_map<T, U>(rest, f); }));
      }
      cur = step->second;
    }
  });
}

template <class T, class U>
Seq<U> map_seq(Seq<T> s, std::function<U(const T&)> f) {
  return Seq<U>([s, f]() -> typename Seq<U>::Step {
    const auto& step = s.pull();
    if (!step) return std::nullopt;
    return typename Seq<U>::Step(std::in_place, f(step->first), map_seq<T, U>(step->second, f));
  });
}

template <class T>
std::vector<T> take(const Seq<T>& s, std::size_t n) {
  std::vector<T> out;
  Seq<T> cur = s;
  while (out.size() < n) {
    const auto& step = cur.pull();
    if (!step) break;
    out.push_back(step->first);
    cur = step->second;
  }
  return out;
}

template <class T>
std::vector<T> to_vector(const Seq<T>& s) {
  return take(s, static_cast<std::size_t>(-1));
}

}  // namespace holres
