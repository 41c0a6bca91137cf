#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "texp/substitution.hpp"
#include "texp/value.hpp"

namespace texp {

class Pattern;

struct Wildcard {
  friend bool operator==(const Wildcard &, const Wildcard &) = default;
};

struct VarPattern {
  VarName name;
  friend bool operator==(const VarPattern &, const VarPattern &) = default;
};

struct LiteralPattern {
  Value value;
  friend bool operator==(const LiteralPattern &, const LiteralPattern &) = default;
};

/// `[p1, ..., pn]` or `[p1, ..., pn | tail]`; the tail matches the rest of
/// the list, so a tailed pattern needs at least n elements.
struct ListPattern {
  std::vector<Pattern> items;
  std::shared_ptr<const Pattern> tail;
  friend bool operator==(const ListPattern &a, const ListPattern &b);
};

class Pattern {
public:
  using Node = std::variant<Wildcard, VarPattern, LiteralPattern, ListPattern>;

  Pattern() : node_(Wildcard{}) {}
  Pattern(Node n) : node_(std::move(n)) {}

  static Pattern wildcard() { return Pattern{Wildcard{}}; }
  static Pattern var(VarName x) { return Pattern{VarPattern{std::move(x)}}; }
  static Pattern literal(Value v) { return Pattern{LiteralPattern{std::move(v)}}; }
  static Pattern list(std::vector<Pattern> items, std::optional<Pattern> tail = std::nullopt) {
    ListPattern lp{std::move(items), nullptr};
    if (tail)
      lp.tail = std::make_shared<const Pattern>(std::move(*tail));
    return Pattern{std::move(lp)};
  }

  [[nodiscard]] const Node &node() const { return node_; }
  template <class T> [[nodiscard]] const T *as() const { return std::get_if<T>(&node_); }

  friend bool operator==(const Pattern &a, const Pattern &b) { return a.node_ == b.node_; }

  [[nodiscard]] std::size_t hash() const {
    std::size_t h = node_.index() * 0x100000001b3ULL;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    std::visit(
        [&](const auto &n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, VarPattern>)
            mix(std::hash<std::string>{}(n.name));
          else if constexpr (std::is_same_v<T, LiteralPattern>)
            mix(n.value.hash());
          else if constexpr (std::is_same_v<T, ListPattern>) {
            for (const auto &p : n.items)
              mix(p.hash());
            mix(n.tail ? n.tail->hash() + 1 : 0);
          }
        },
        node_);
    return h;
  }

private:
  Node node_;
};

inline bool operator==(const ListPattern &a, const ListPattern &b) {
  if (a.items != b.items || bool(a.tail) != bool(b.tail))
    return false;
  return !a.tail || *a.tail == *b.tail;
}

/// A named pattern term such as `write(id2, fd)`.
struct EventType {
  std::string head;
  std::vector<Pattern> args;

  friend bool operator==(const EventType &, const EventType &) = default;

  [[nodiscard]] std::size_t hash() const {
    std::size_t h = std::hash<std::string>{}(head);
    for (const auto &p : args)
      h ^= p.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

namespace detail {
inline void collectVars(const Pattern &p, std::set<VarName> &out) {
  if (const auto *v = p.as<VarPattern>())
    out.insert(v->name);
  else if (const auto *l = p.as<ListPattern>()) {
    for (const auto &q : l->items)
      collectVars(q, out);
    if (l->tail)
      collectVars(*l->tail, out);
  }
}
} // namespace detail

inline std::set<VarName> varsOf(const Pattern &p) {
  std::set<VarName> out;
  detail::collectVars(p, out);
  return out;
}

inline std::set<VarName> varsOf(const EventType &t) {
  std::set<VarName> out;
  for (const auto &p : t.args)
    detail::collectVars(p, out);
  return out;
}

inline Pattern applySubst(const Substitution &s, const Pattern &p) {
  if (const auto *v = p.as<VarPattern>()) {
    if (const Value *bound = s.lookup(v->name))
      return Pattern::literal(*bound);
    return p;
  }
  if (const auto *l = p.as<ListPattern>()) {
    std::vector<Pattern> items;
    items.reserve(l->items.size());
    for (const auto &q : l->items)
      items.push_back(applySubst(s, q));
    std::optional<Pattern> tail;
    if (l->tail)
      tail = applySubst(s, *l->tail);
    return Pattern::list(std::move(items), std::move(tail));
  }
  return p;
}

inline EventType applySubstType(const Substitution &s, const EventType &t) {
  if (s.empty())
    return t;
  EventType out{t.head, {}};
  out.args.reserve(t.args.size());
  for (const auto &p : t.args)
    out.args.push_back(applySubst(s, p));
  return out;
}

/// Matches a value against a pattern, extending `binds`. Repeated variables
/// must bind equal values. On failure `binds` may hold partial bindings, so
/// callers match into a scratch copy.
inline bool matchPattern(const Pattern &p, const Value &v, Substitution &binds) {
  return std::visit(
      [&](const auto &n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Wildcard>)
          return true;
        else if constexpr (std::is_same_v<T, VarPattern>)
          return binds.bind(n.name, v);
        else if constexpr (std::is_same_v<T, LiteralPattern>)
          return valueEq(n.value, v);
        else {
          if (!v.isArray())
            return false;
          const auto &xs = v.asArray();
          if (n.tail ? xs.size() < n.items.size() : xs.size() != n.items.size())
            return false;
          for (std::size_t i = 0; i < n.items.size(); ++i)
            if (!matchPattern(n.items[i], xs[i], binds))
              return false;
          if (n.tail) {
            Value::Array rest(xs.begin() + static_cast<std::ptrdiff_t>(n.items.size()), xs.end());
            return matchPattern(*n.tail, Value{std::move(rest)}, binds);
          }
          return true;
        }
      },
      p.node());
}

inline bool isIdentifierStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool isIdentifierChar(char c) { return isIdentifierStart(c) || (c >= '0' && c <= '9'); }

inline std::string toString(const Pattern &p) {
  return std::visit(
      [](const auto &n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Wildcard>)
          return "_";
        else if constexpr (std::is_same_v<T, VarPattern>)
          return n.name;
        else if constexpr (std::is_same_v<T, LiteralPattern>)
          return toString(n.value);
        else {
          std::string out = "[";
          for (std::size_t i = 0; i < n.items.size(); ++i) {
            if (i)
              out += ", ";
            out += toString(n.items[i]);
          }
          if (n.tail)
            out += " | " + toString(*n.tail);
          return out + "]";
        }
      },
      p.node());
}

inline std::string toString(const EventType &t) {
  if (t.args.empty())
    return t.head;
  std::string out = t.head + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i)
      out += ", ";
    out += toString(t.args[i]);
  }
  return out + ")";
}

} // namespace texp

template <> struct std::hash<texp::EventType> {
  std::size_t operator()(const texp::EventType &t) const noexcept { return t.hash(); }
};
