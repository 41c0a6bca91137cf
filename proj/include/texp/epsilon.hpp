#pragma once

#include <cstdint>
#include <vector>

#include "texp/term_store.hpp"

namespace texp {

/// Memoized ε predicate (acceptance of the empty trace) over one store.
///
/// ε is inductive, so on a cyclic graph it is the least fixpoint of its
/// rules: a node whose only justification runs through itself is false.
/// The fixpoint is computed by Kleene iteration over the region of nodes
/// not yet cached, so each node is solved once per store.
class EpsilonCache {
public:
  bool operator()(const TermStore &store, NodeId n) {
    if (auto v = cached(n); v >= 0)
      return v == 1;
    solve(store, n);
    return values_[n.index] == 1;
  }

private:
  [[nodiscard]] std::int8_t cached(NodeId n) const {
    return n.index < values_.size() ? values_[n.index] : std::int8_t{-1};
  }

  void solve(const TermStore &store, NodeId root) {
    if (values_.size() < store.nodeCount())
      values_.resize(store.nodeCount(), -1);

    // Post-order over uncached nodes; prefix nodes are never nullable and
    // stop the descent.
    std::vector<NodeId> region;
    std::vector<std::uint8_t> seen(store.nodeCount(), 0);
    std::vector<std::pair<NodeId, bool>> stack{{root, false}};
    while (!stack.empty()) {
      auto [n, expanded] = stack.back();
      stack.pop_back();
      if (expanded) {
        region.push_back(n);
        continue;
      }
      if (seen[n.index] || values_[n.index] >= 0)
        continue;
      seen[n.index] = 1;
      stack.emplace_back(n, true);
      for (NodeId c : children(store, n))
        stack.emplace_back(c, false);
    }

    std::vector<std::int8_t> tentative(store.nodeCount(), 0);
    auto value = [&](NodeId c) { return values_[c.index] >= 0 ? values_[c.index] == 1 : tentative[c.index] == 1; };
    bool changed = true;
    while (changed) {
      changed = false;
      for (NodeId n : region) {
        bool v = false;
        switch (store.op(n)) {
        case Op::Eps:
          v = true;
          break;
        case Op::Prefix:
          v = false;
          break;
        case Op::Or:
          v = value(store.left(n)) || value(store.right(n));
          break;
        case Op::Cat:
        case Op::And:
        case Op::Shuffle:
          v = value(store.left(n)) && value(store.right(n));
          break;
        case Op::Binder:
          v = value(store.binderBody(n));
          break;
        case Op::Ref:
          v = value(*store.equation(store.refEquation(n)).body);
          break;
        }
        if (v && !tentative[n.index]) {
          tentative[n.index] = 1;
          changed = true;
        }
      }
    }
    for (NodeId n : region)
      values_[n.index] = tentative[n.index];
  }

  static std::vector<NodeId> children(const TermStore &store, NodeId n) {
    switch (store.op(n)) {
    case Op::Eps:
    case Op::Prefix:
      return {};
    case Op::Cat:
    case Op::And:
    case Op::Or:
    case Op::Shuffle:
      return {store.left(n), store.right(n)};
    case Op::Binder:
      return {store.binderBody(n)};
    case Op::Ref:
      return {*store.equation(store.refEquation(n)).body};
    }
    return {};
  }

  std::vector<std::int8_t> values_;
};

} // namespace texp
