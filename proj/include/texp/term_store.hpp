#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "texp/event_type.hpp"
#include "texp/substitution.hpp"

namespace texp {

/// Identity of a hash-consed trace expression node inside one TermStore.
struct NodeId {
  std::uint32_t index = 0;
  friend auto operator<=>(const NodeId &, const NodeId &) = default;
};

/// Identity of an equation (named, possibly recursive, trace expression).
struct EquationId {
  std::uint32_t index = 0;
  friend auto operator<=>(const EquationId &, const EquationId &) = default;
};

enum class Op : std::uint8_t { Eps, Prefix, Cat, And, Or, Shuffle, Binder, Ref };

using VarSet = std::set<VarName>;

} // namespace texp

template <> struct std::hash<texp::NodeId> {
  std::size_t operator()(texp::NodeId n) const noexcept { return std::hash<std::uint32_t>{}(n.index); }
};

namespace texp {

/// Owns the finite cyclic term graph of trace expressions.
///
/// Interior nodes are hash-consed: building the same shape over the same
/// children returns the same NodeId. Cycles only pass through `Ref` nodes,
/// which name an equation whose body is attached after declaration, so
/// recursive equations and lazily specialized copies of them can be built.
///
/// Specializing a node with a substitution is memoized on
/// (node, substitution restricted to the node's free variables); on a
/// regular term that key space is finite, which makes specialization total.
///
/// A store is built single-threaded. Stepping a monitor adds nodes, so each
/// monitored session works on its own copy.
class TermStore {
public:
  struct Equation {
    std::string name;
    std::optional<NodeId> body;
    VarSet freeVars;
    bool generated = false;
  };

  TermStore() { eps_ = intern({Op::Eps, 0, 0}); }

  [[nodiscard]] NodeId eps() const { return eps_; }

  NodeId prefix(const EventType &type, NodeId tail) { return intern({Op::Prefix, internType(type), tail.index}); }
  NodeId cat(NodeId l, NodeId r) { return intern({Op::Cat, l.index, r.index}); }
  NodeId andOf(NodeId l, NodeId r) { return intern({Op::And, l.index, r.index}); }
  NodeId orOf(NodeId l, NodeId r) { return intern({Op::Or, l.index, r.index}); }
  NodeId shuffle(NodeId l, NodeId r) { return intern({Op::Shuffle, l.index, r.index}); }
  NodeId binary(Op op, NodeId l, NodeId r) {
    assert(op == Op::Cat || op == Op::And || op == Op::Or || op == Op::Shuffle);
    return intern({op, l.index, r.index});
  }
  NodeId binder(const VarName &x, NodeId body) { return intern({Op::Binder, internVar(x), body.index}); }

  /// Declares an equation with no body yet; returns the existing one when
  /// the name is already declared.
  EquationId declareEquation(const std::string &name) {
    if (auto it = equationIndex_.find(name); it != equationIndex_.end())
      return it->second;
    EquationId id{static_cast<std::uint32_t>(equations_.size())};
    equations_.push_back(Equation{name, std::nullopt, {}, false});
    equationIndex_.emplace(name, id);
    return id;
  }

  void defineEquation(EquationId eq, NodeId body) { equations_.at(eq.index).body = body; }

  [[nodiscard]] std::optional<EquationId> findEquation(const std::string &name) const {
    if (auto it = equationIndex_.find(name); it != equationIndex_.end())
      return it->second;
    return std::nullopt;
  }

  NodeId ref(EquationId eq) { return intern({Op::Ref, eq.index, 0}); }

  [[nodiscard]] const Equation &equation(EquationId eq) const { return equations_.at(eq.index); }
  [[nodiscard]] std::size_t equationCount() const { return equations_.size(); }
  [[nodiscard]] std::size_t nodeCount() const { return nodes_.size(); }

  // Node accessors.
  [[nodiscard]] Op op(NodeId n) const { return nodes_.at(n.index).op; }
  [[nodiscard]] const EventType &eventType(NodeId n) const {
    assert(op(n) == Op::Prefix);
    return types_[nodes_[n.index].a];
  }
  [[nodiscard]] NodeId tail(NodeId n) const {
    assert(op(n) == Op::Prefix);
    return NodeId{nodes_[n.index].b};
  }
  [[nodiscard]] NodeId left(NodeId n) const { return NodeId{nodes_.at(n.index).a}; }
  [[nodiscard]] NodeId right(NodeId n) const { return NodeId{nodes_.at(n.index).b}; }
  [[nodiscard]] const VarName &binderVar(NodeId n) const {
    assert(op(n) == Op::Binder);
    return vars_[nodes_[n.index].a];
  }
  [[nodiscard]] NodeId binderBody(NodeId n) const {
    assert(op(n) == Op::Binder);
    return NodeId{nodes_[n.index].b};
  }
  [[nodiscard]] EquationId refEquation(NodeId n) const {
    assert(op(n) == Op::Ref);
    return EquationId{nodes_[n.index].a};
  }

  /// Follows `Ref` nodes to the first non-reference node.
  [[nodiscard]] NodeId resolve(NodeId n) const {
    std::size_t hops = 0;
    while (op(n) == Op::Ref) {
      const auto &eq = equations_[nodes_[n.index].a];
      if (!eq.body)
        throw std::logic_error("equation '" + eq.name + "' has no body");
      n = *eq.body;
      if (++hops > equations_.size())
        throw std::logic_error("equation '" + eq.name + "' is an unguarded alias cycle");
    }
    return n;
  }

  /// Free trace variables of a node. Requires equation free-variable sets
  /// to be computed (see computeEquationFreeVars).
  [[nodiscard]] const VarSet &freeVars(NodeId n) {
    if (fvCache_.size() < nodes_.size())
      fvCache_.resize(nodes_.size());
    if (fvCache_[n.index])
      return *fvCache_[n.index];
    auto result = computeFreeVars(n, [this](NodeId c) -> const VarSet & { return freeVars(c); },
                                  [this](EquationId e) -> const VarSet & { return equations_[e.index].freeVars; });
    if (fvCache_.size() < nodes_.size())
      fvCache_.resize(nodes_.size());
    fvCache_[n.index] = result.empty() ? emptyVars() : std::make_shared<const VarSet>(std::move(result));
    return *fvCache_[n.index];
  }

  /// Least fixpoint of free-variable sets over all defined equations. Call
  /// once after the equation system is fully defined.
  void computeEquationFreeVars() {
    for (auto &eq : equations_)
      if (!eq.generated)
        eq.freeVars.clear();
    bool changed = true;
    while (changed) {
      changed = false;
      std::unordered_map<NodeId, VarSet> memo;
      std::function<const VarSet &(NodeId)> fv = [&](NodeId n) -> const VarSet & {
        if (auto it = memo.find(n); it != memo.end())
          return it->second;
        auto r = computeFreeVars(n, fv, [this](EquationId e) -> const VarSet & { return equations_[e.index].freeVars; });
        return memo.emplace(n, std::move(r)).first->second;
      };
      for (auto &eq : equations_) {
        if (!eq.body || eq.generated)
          continue;
        VarSet next = fv(*eq.body);
        if (next != eq.freeVars) {
          eq.freeVars = std::move(next);
          changed = true;
        }
      }
    }
    fvCache_.clear();
  }

  /// Substitutes every free occurrence of the variables of `s` in `n`.
  /// Binders shadow; references are specialized into generated equations
  /// so cycles are preserved.
  NodeId applySubst(const Substitution &s, NodeId n) {
    if (s.empty())
      return n;
    const VarSet &fv = freeVars(n);
    Substitution r;
    for (const auto &[x, v] : s)
      if (fv.count(x))
        r.bind(x, v);
    if (r.empty())
      return n;
    auto key = std::make_pair(n, r);
    if (auto it = substMemo_.find(key); it != substMemo_.end())
      return it->second;

    const NodeData data = nodes_[n.index];
    NodeId result;
    switch (data.op) {
    case Op::Eps:
      result = n;
      break;
    case Op::Prefix: {
      EventType specialized = applySubstType(r, types_[data.a]);
      NodeId t = applySubst(r, NodeId{data.b});
      result = prefix(specialized, t);
      break;
    }
    case Op::Cat:
    case Op::And:
    case Op::Or:
    case Op::Shuffle: {
      NodeId l = applySubst(r, NodeId{data.a});
      NodeId rr = applySubst(r, NodeId{data.b});
      result = intern({data.op, l.index, rr.index});
      break;
    }
    case Op::Binder: {
      const VarName x = vars_[data.a];
      result = binder(x, applySubst(restrictSubst(r, x), NodeId{data.b}));
      break;
    }
    case Op::Ref: {
      const EquationId source{data.a};
      VarSet remaining;
      for (const auto &x : equations_[source.index].freeVars)
        if (!r.contains(x))
          remaining.insert(x);
      EquationId specialized{static_cast<std::uint32_t>(equations_.size())};
      equations_.push_back(Equation{equations_[source.index].name + toString(r), std::nullopt,
                                    std::move(remaining), true});
      result = ref(specialized);
      // Registered before the body is built so cycles close on this node.
      substMemo_.emplace(key, result);
      auto sourceBody = equations_[source.index].body;
      if (!sourceBody)
        throw std::logic_error("equation '" + equations_[source.index].name + "' has no body");
      NodeId body = applySubst(r, *sourceBody);
      equations_[specialized.index].body = body;
      return result;
    }
    }
    substMemo_.emplace(std::move(key), result);
    return result;
  }

private:
  struct NodeData {
    Op op;
    std::uint32_t a;
    std::uint32_t b;
    friend bool operator==(const NodeData &, const NodeData &) = default;
  };
  struct NodeDataHash {
    std::size_t operator()(const NodeData &d) const noexcept {
      std::size_t h = static_cast<std::size_t>(d.op);
      h = h * 0x9e3779b97f4a7c15ULL ^ d.a;
      h = h * 0x9e3779b97f4a7c15ULL ^ d.b;
      return h;
    }
  };
  struct SubstKeyHash {
    std::size_t operator()(const std::pair<NodeId, Substitution> &k) const noexcept {
      return k.second.hash() * 31 + k.first.index;
    }
  };

  static std::shared_ptr<const VarSet> emptyVars() {
    static const auto empty = std::make_shared<const VarSet>();
    return empty;
  }

  template <class ChildFv, class EqFv>
  VarSet computeFreeVars(NodeId n, ChildFv &&childFv, EqFv &&eqFv) {
    const NodeData data = nodes_[n.index];
    switch (data.op) {
    case Op::Eps:
      return {};
    case Op::Prefix: {
      VarSet out = varsOf(types_[data.a]);
      const VarSet &t = childFv(NodeId{data.b});
      out.insert(t.begin(), t.end());
      return out;
    }
    case Op::Cat:
    case Op::And:
    case Op::Or:
    case Op::Shuffle: {
      VarSet out = childFv(NodeId{data.a});
      const VarSet &r = childFv(NodeId{data.b});
      out.insert(r.begin(), r.end());
      return out;
    }
    case Op::Binder: {
      VarSet out = childFv(NodeId{data.b});
      out.erase(vars_[data.a]);
      return out;
    }
    case Op::Ref:
      return eqFv(EquationId{data.a});
    }
    return {};
  }

  NodeId intern(NodeData d) {
    if (auto it = intern_.find(d); it != intern_.end())
      return it->second;
    NodeId id{static_cast<std::uint32_t>(nodes_.size())};
    nodes_.push_back(d);
    intern_.emplace(d, id);
    return id;
  }

  std::uint32_t internType(const EventType &t) {
    if (auto it = typeIndex_.find(t); it != typeIndex_.end())
      return it->second;
    auto idx = static_cast<std::uint32_t>(types_.size());
    types_.push_back(t);
    typeIndex_.emplace(t, idx);
    return idx;
  }

  std::uint32_t internVar(const VarName &x) {
    if (auto it = varIndex_.find(x); it != varIndex_.end())
      return it->second;
    auto idx = static_cast<std::uint32_t>(vars_.size());
    vars_.push_back(x);
    varIndex_.emplace(x, idx);
    return idx;
  }

  std::vector<NodeData> nodes_;
  std::unordered_map<NodeData, NodeId, NodeDataHash> intern_;
  std::vector<EventType> types_;
  std::unordered_map<EventType, std::uint32_t> typeIndex_;
  std::vector<VarName> vars_;
  std::unordered_map<VarName, std::uint32_t> varIndex_;
  std::vector<Equation> equations_;
  std::unordered_map<std::string, EquationId> equationIndex_;
  std::vector<std::shared_ptr<const VarSet>> fvCache_;
  std::unordered_map<std::pair<NodeId, Substitution>, NodeId, SubstKeyHash> substMemo_;
  NodeId eps_;
};

} // namespace texp
