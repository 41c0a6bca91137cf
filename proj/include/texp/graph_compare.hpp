#pragma once

#include <set>
#include <utility>

#include "texp/term_store.hpp"

namespace texp {

/// Node-for-node equality of two expressions, possibly in different stores.
/// References compare by equation name and are not unfolded.
inline bool sameShape(const TermStore &sa, NodeId a, const TermStore &sb, NodeId b) {
  Op op = sa.op(a);
  if (op != sb.op(b))
    return false;
  switch (op) {
  case Op::Eps:
    return true;
  case Op::Ref:
    return sa.equation(sa.refEquation(a)).name == sb.equation(sb.refEquation(b)).name;
  case Op::Prefix:
    return sa.eventType(a) == sb.eventType(b) && sameShape(sa, sa.tail(a), sb, sb.tail(b));
  case Op::Binder:
    return sa.binderVar(a) == sb.binderVar(b) && sameShape(sa, sa.binderBody(a), sb, sb.binderBody(b));
  default:
    return sameShape(sa, sa.left(a), sb, sb.left(b)) && sameShape(sa, sa.right(a), sb, sb.right(b));
  }
}

/// Equality of the (possibly infinite) regular trees denoted by two nodes:
/// references are unfolded, and a pair already under comparison is assumed
/// equal, which is sound for the greatest fixpoint.
inline bool sameTree(const TermStore &sa, NodeId a, const TermStore &sb, NodeId b) {
  std::set<std::pair<NodeId, NodeId>> assumed;
  auto go = [&](auto &&self, NodeId x, NodeId y) -> bool {
    if (!assumed.insert({x, y}).second)
      return true;
    x = sa.resolve(x);
    y = sb.resolve(y);
    Op op = sa.op(x);
    if (op != sb.op(y))
      return false;
    switch (op) {
    case Op::Eps:
      return true;
    case Op::Prefix:
      return sa.eventType(x) == sb.eventType(y) && self(self, sa.tail(x), sb.tail(y));
    case Op::Binder:
      return sa.binderVar(x) == sb.binderVar(y) && self(self, sa.binderBody(x), sb.binderBody(y));
    case Op::Ref:
      return false;
    default:
      return self(self, sa.left(x), sb.left(y)) && self(self, sa.right(x), sb.right(y));
    }
  };
  return go(go, a, b);
}

} // namespace texp
