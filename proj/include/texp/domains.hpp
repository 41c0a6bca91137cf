#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "texp/event_type.hpp"
#include "texp/substitution.hpp"
#include "texp/value.hpp"

namespace texp {

/// An event received from the monitored system. The payload is a map.
struct Event {
  Value payload;
  friend bool operator==(const Event &, const Event &) = default;
};

class DecodeError : public std::runtime_error {
public:
  DecodeError(std::size_t position, std::string reason)
      : std::runtime_error("decode error at byte " + std::to_string(position) + ": " + reason),
        position_(position), reason_(std::move(reason)) {}
  [[nodiscard]] std::size_t position() const { return position_; }
  [[nodiscard]] const std::string &reason() const { return reason_; }

private:
  std::size_t position_;
  std::string reason_;
};

class UnknownTypeName : public std::runtime_error {
public:
  UnknownTypeName(const std::string &head, std::size_t arity)
      : std::runtime_error("unknown event type " + head + "/" + std::to_string(arity)) {}
};

inline Event decodeEvent(std::string_view raw) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::parse_error &e) {
    throw DecodeError(e.byte, e.what());
  }
  if (!doc.is_object())
    throw DecodeError(1, "top-level value is not an object");
  return Event{fromJson(doc)};
}

inline std::string encodeEvent(const Event &e) { return toString(e.payload); }

/// Builtin base event domains.
enum class Domain : std::uint8_t {
  /// Function and callback calls: func_pre/func_post/cb_pre/cb_post.
  Funcs,
  /// Typed messages: msg(type, payload).
  Messages,
};

inline std::optional<Domain> domainFromName(std::string_view name) {
  if (name == "funcs")
    return Domain::Funcs;
  if (name == "messages")
    return Domain::Messages;
  return std::nullopt;
}

inline std::string_view domainName(Domain d) { return d == Domain::Funcs ? "funcs" : "messages"; }

/// Whether `head` names a base type of the domain, at any arity.
inline bool isBaseHead(Domain d, std::string_view head) {
  if (d == Domain::Funcs)
    return head == "func_pre" || head == "func_post" || head == "cb_pre" || head == "cb_post";
  return head == "msg";
}

inline bool isBaseType(Domain d, std::string_view head, std::size_t arity) {
  if (!isBaseHead(d, head))
    return false;
  if (d == Domain::Messages)
    return arity == 2;
  // func_post carries the optional return value as a fourth argument.
  return arity == 3 || (head == "func_post" && arity == 4);
}

struct Guard {
  enum class Cmp : std::uint8_t { Eq, Ne, Gt, Ge, Lt, Le };
  using Operand = std::variant<VarName, Value>;

  Cmp op = Cmp::Eq;
  Operand lhs;
  Operand rhs;

  friend bool operator==(const Guard &, const Guard &) = default;
};

inline std::string_view toString(Guard::Cmp c) {
  switch (c) {
  case Guard::Cmp::Eq:
    return "==";
  case Guard::Cmp::Ne:
    return "!=";
  case Guard::Cmp::Gt:
    return ">";
  case Guard::Cmp::Ge:
    return ">=";
  case Guard::Cmp::Lt:
    return "<";
  case Guard::Cmp::Le:
    return "<=";
  }
  return "?";
}

/// A derived event type: `type head matches body where guards`.
/// Head parameters are variables (or `_`).
struct TypeClause {
  EventType head;
  EventType body;
  std::vector<Guard> guards;

  friend bool operator==(const TypeClause &, const TypeClause &) = default;
};

using DiagnosticSink = std::function<void(std::string_view)>;

/// The active domain plus the user-defined derived types.
struct MatchContext {
  Domain domain = Domain::Funcs;
  std::vector<TypeClause> clauses;
  /// Receives non-fatal match diagnostics (guard type errors). May be empty.
  DiagnosticSink diagnostics;

  [[nodiscard]] bool hasDerived(std::string_view head, std::size_t arity) const {
    for (const auto &c : clauses)
      if (c.head.head == head && c.head.args.size() == arity)
        return true;
    return false;
  }

  void report(std::string_view msg) const {
    if (diagnostics)
      diagnostics(msg);
  }
};

namespace detail {

inline bool matchArgs(const EventType &t, std::initializer_list<const Value *> fields, Substitution &out) {
  std::size_t i = 0;
  for (const Value *f : fields) {
    if (i >= t.args.size())
      break;
    static const Value null;
    if (!matchPattern(t.args[i], f ? *f : null, out))
      return false;
    ++i;
  }
  return true;
}

inline std::optional<bool> evalGuard(const Guard &g, const Substitution &env, const MatchContext &ctx) {
  auto operand = [&](const Guard::Operand &o) -> const Value * {
    if (const auto *v = std::get_if<Value>(&o))
      return v;
    return env.lookup(std::get<VarName>(o));
  };
  const Value *a = operand(g.lhs);
  const Value *b = operand(g.rhs);
  if (!a || !b) {
    ctx.report("guard refers to an unbound variable");
    return std::nullopt;
  }
  switch (g.op) {
  case Guard::Cmp::Eq:
    return valueEq(*a, *b);
  case Guard::Cmp::Ne:
    return !valueEq(*a, *b);
  default:
    break;
  }
  if (!a->isNumber() || !b->isNumber()) {
    ctx.report("GuardTypeError: ordering guard " + std::string(toString(g.op)) + " applied to " + toString(*a) +
               " and " + toString(*b));
    return std::nullopt;
  }
  double x = a->asNumber(), y = b->asNumber();
  switch (g.op) {
  case Guard::Cmp::Gt:
    return x > y;
  case Guard::Cmp::Ge:
    return x >= y;
  case Guard::Cmp::Lt:
    return x < y;
  case Guard::Cmp::Le:
    return x <= y;
  default:
    return false;
  }
}

} // namespace detail

/// Matches an event against a base type of the domain. Funcs-domain events
/// are keyed by `event` and carry `name`, `id`, `args` and an optional
/// `ret`; message events carry `type` and `payload`.
inline std::optional<Substitution> matchBase(const Event &e, const EventType &t, Domain domain) {
  Substitution out;
  if (domain == Domain::Funcs) {
    const Value *kind = e.payload.find("event");
    if (!kind || !kind->isText() || kind->asText() != t.head)
      return std::nullopt;
    const Value *name = e.payload.find("name");
    const Value *id = e.payload.find("id");
    const Value *args = e.payload.find("args");
    if (!name || !id || !args)
      return std::nullopt;
    if (!detail::matchArgs(t, {name, id, args, e.payload.find("ret")}, out))
      return std::nullopt;
    return out;
  }
  if (t.head != "msg")
    return std::nullopt;
  const Value *type = e.payload.find("type");
  if (!type)
    return std::nullopt;
  if (!detail::matchArgs(t, {type, e.payload.find("payload")}, out))
    return std::nullopt;
  return out;
}

inline std::optional<Substitution> match(const Event &e, const EventType &t, const MatchContext &ctx);

/// Tries the clauses for t's head in declaration order. Literal arguments of
/// t are pushed into the clause body before matching; the remaining argument
/// patterns are matched against the values the clause computed for the
/// corresponding head parameters.
inline std::optional<Substitution> matchDerived(const Event &e, const EventType &t, const MatchContext &ctx) {
  for (const auto &clause : ctx.clauses) {
    if (clause.head.head != t.head || clause.head.args.size() != t.args.size())
      continue;

    Substitution env;
    bool consistent = true;
    for (std::size_t i = 0; i < t.args.size() && consistent; ++i) {
      const auto *param = clause.head.args[i].as<VarPattern>();
      const auto *lit = t.args[i].as<LiteralPattern>();
      if (param && lit)
        consistent = env.bind(param->name, lit->value);
    }
    if (!consistent)
      continue;

    auto bodyBindings = match(e, applySubstType(env, clause.body), ctx);
    if (!bodyBindings)
      continue;
    auto full = mergeSubst(env, *bodyBindings);
    if (!full)
      continue;

    bool guardsHold = true;
    for (const auto &g : clause.guards) {
      auto r = detail::evalGuard(g, *full, ctx);
      if (!r || !*r) {
        guardsHold = false;
        break;
      }
    }
    if (!guardsHold)
      continue;

    Substitution result;
    bool ok = true;
    for (std::size_t i = 0; i < t.args.size() && ok; ++i) {
      if (t.args[i].as<LiteralPattern>() || t.args[i].as<Wildcard>())
        continue;
      const auto *param = clause.head.args[i].as<VarPattern>();
      const Value *v = param ? full->lookup(param->name) : nullptr;
      if (!v) {
        ctx.report("clause for " + toString(clause.head) + " leaves argument " + std::to_string(i + 1) + " unbound");
        ok = false;
        break;
      }
      ok = matchPattern(t.args[i], *v, result);
    }
    if (ok)
      return result;
  }
  return std::nullopt;
}

/// match(e, t): base types go to matchBase, everything else to the derived
/// clauses. On success the domain of the result is exactly varsOf(t).
inline std::optional<Substitution> match(const Event &e, const EventType &t, const MatchContext &ctx) {
  if (isBaseType(ctx.domain, t.head, t.args.size()))
    return matchBase(e, t, ctx.domain);
  if (ctx.hasDerived(t.head, t.args.size()))
    return matchDerived(e, t, ctx);
  throw UnknownTypeName(t.head, t.args.size());
}

} // namespace texp
