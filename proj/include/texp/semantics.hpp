#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "texp/domains.hpp"
#include "texp/epsilon.hpp"
#include "texp/program.hpp"
#include "texp/term_store.hpp"

namespace texp {

class FrontierOverflow : public std::runtime_error {
public:
  FrontierOverflow(std::size_t size, std::size_t cap)
      : std::runtime_error("frontier of " + std::to_string(size) + " states exceeds the cap of " +
                           std::to_string(cap)),
        size_(size), cap_(cap) {}
  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] std::size_t cap() const { return cap_; }

private:
  std::size_t size_;
  std::size_t cap_;
};

/// Successors of one auxiliary transition step: pairs (τ', σ), deduplicated
/// and sorted by (node, substitution).
using StepResult = std::vector<std::pair<NodeId, Substitution>>;

/// Frontier of live derivations plus a sticky verdict.
struct MonitorState {
  /// Sorted, no duplicates.
  std::vector<NodeId> frontier;
  /// 1-based index of the event that emptied the frontier.
  std::optional<std::size_t> violatedAt;
  std::size_t eventCount = 0;

  [[nodiscard]] bool alive() const { return !violatedAt.has_value(); }
  friend bool operator==(const MonitorState &, const MonitorState &) = default;
};

struct MonitorOptions {
  std::size_t frontierCap = 4096;
  /// Collapse `eps | t`, `t | eps`, `eps . t` and binders whose variable no
  /// longer occurs when building successors. Language preserving.
  bool simplify = true;
};

/// Runs the transition system over one program. Owns its copy of the
/// program because stepping specializes equations into the store.
class Monitor {
public:
  explicit Monitor(SpecProgram program, MonitorOptions options = {})
      : program_(std::move(program)), options_(options) {}

  [[nodiscard]] const SpecProgram &program() const { return program_; }
  [[nodiscard]] TermStore &store() { return program_.store; }
  [[nodiscard]] const MonitorOptions &options() const { return options_; }

  [[nodiscard]] MonitorState initial() const { return MonitorState{{program_.mainNode}, std::nullopt, 0}; }

  bool epsilon(NodeId n) { return epsilon_(program_.store, n); }

  /// All (τ', σ) with τ --e--> τ'; σ derivable by the auxiliary rules.
  StepResult stepAux(NodeId n, const Event &e) {
    memo_.clear();
    return aux(n, e);
  }

  /// Top-level step: keeps successors whose computed substitution is empty.
  MonitorState step(const MonitorState &state, const Event &e) {
    MonitorState next;
    next.eventCount = state.eventCount + 1;
    if (!state.alive()) {
      next.violatedAt = state.violatedAt;
      return next;
    }
    memo_.clear();
    for (NodeId n : state.frontier) {
      for (const auto &[succ, sigma] : aux(n, e)) {
        if (!sigma.empty()) {
          if (!reportedUnhoused_) {
            reportedUnhoused_ = true;
            program_.context.report("discarded a top-level successor with non-empty substitution " +
                                    toString(sigma));
          }
          continue;
        }
        next.frontier.push_back(succ);
      }
    }
    std::sort(next.frontier.begin(), next.frontier.end());
    next.frontier.erase(std::unique(next.frontier.begin(), next.frontier.end()), next.frontier.end());
    if (next.frontier.size() > options_.frontierCap)
      throw FrontierOverflow(next.frontier.size(), options_.frontierCap);
    if (next.frontier.empty())
      next.violatedAt = next.eventCount;
    return next;
  }

  /// The consumed trace is a complete word of the language.
  bool acceptsFinal(const MonitorState &state) {
    if (!state.alive())
      return false;
    return std::any_of(state.frontier.begin(), state.frontier.end(), [this](NodeId n) { return epsilon(n); });
  }

private:
  NodeId mkShuffle(NodeId l, NodeId r) {
    auto &s = program_.store;
    if (options_.simplify) {
      if (l == s.eps())
        return r;
      if (r == s.eps())
        return l;
    }
    return s.shuffle(l, r);
  }

  NodeId mkCat(NodeId l, NodeId r) {
    auto &s = program_.store;
    if (options_.simplify && l == s.eps())
      return r;
    return s.cat(l, r);
  }

  NodeId mkBinder(const VarName &x, NodeId body) {
    auto &s = program_.store;
    if (options_.simplify && !s.freeVars(body).count(x))
      return body;
    return s.binder(x, body);
  }

  static std::map<Substitution, std::vector<NodeId>> groupBySubst(const StepResult &r) {
    std::map<Substitution, std::vector<NodeId>> out;
    for (const auto &[t, sigma] : r)
      out[sigma].push_back(t);
    return out;
  }

  /// The disjunction of `parts` with nested disjunctions flattened, operands
  /// sorted and duplicates removed, so equal unions share one node.
  NodeId mkOrSet(const std::vector<NodeId> &parts) {
    auto &s = program_.store;
    std::vector<NodeId> leaves;
    std::vector<NodeId> todo(parts.rbegin(), parts.rend());
    while (!todo.empty()) {
      NodeId t = todo.back();
      todo.pop_back();
      if (s.op(t) == Op::Or) {
        todo.push_back(s.right(t));
        todo.push_back(s.left(t));
      } else {
        leaves.push_back(t);
      }
    }
    std::sort(leaves.begin(), leaves.end());
    leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
    NodeId acc = leaves.back();
    for (auto it = leaves.rbegin() + 1; it != leaves.rend(); ++it)
      acc = s.orOf(*it, acc);
    return acc;
  }

  NodeId mkAnd(NodeId l, NodeId r) {
    if (l == r)
      return l;
    return l < r ? program_.store.andOf(l, r) : program_.store.andOf(r, l);
  }

  static void normalize(StepResult &r) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }

  const StepResult &aux(NodeId n, const Event &e) {
    if (auto it = memo_.find(n); it != memo_.end())
      return it->second;
    StepResult out = compute(n, e);
    normalize(out);
    return memo_.emplace(n, std::move(out)).first->second;
  }

  StepResult compute(NodeId n, const Event &e) {
    auto &s = program_.store;
    StepResult out;
    switch (s.op(n)) {
    case Op::Eps:
      break;
    case Op::Prefix:
      if (auto sigma = match(e, s.eventType(n), program_.context))
        out.emplace_back(s.tail(n), std::move(*sigma));
      break;
    case Op::Or: {
      NodeId l = s.left(n), r = s.right(n);
      StepResult a = aux(l, e);
      const StepResult &b = aux(r, e);
      out = std::move(a);
      out.insert(out.end(), b.begin(), b.end());
      break;
    }
    case Op::Shuffle: {
      NodeId l = s.left(n), r = s.right(n);
      StepResult a = aux(l, e);
      StepResult b = aux(r, e);
      for (auto &[l2, sigma] : a)
        out.emplace_back(mkShuffle(l2, r), sigma);
      for (auto &[r2, sigma] : b)
        out.emplace_back(mkShuffle(l, r2), sigma);
      break;
    }
    case Op::Cat: {
      NodeId l = s.left(n), r = s.right(n);
      StepResult a = aux(l, e);
      for (auto &[l2, sigma] : a)
        out.emplace_back(mkCat(l2, r), sigma);
      if (epsilon(l)) {
        const StepResult &b = aux(r, e);
        out.insert(out.end(), b.begin(), b.end());
      }
      break;
    }
    case Op::And: {
      NodeId l = s.left(n), r = s.right(n);
      StepResult a = aux(l, e);
      StepResult b = aux(r, e);
      if (options_.simplify) {
        // One conjunction per pair of substitutions, each side the union of
        // its successors. The plain product grows with every nested
        // conjunction.
        auto ga = groupBySubst(a), gb = groupBySubst(b);
        for (auto &[s1, ls] : ga)
          for (auto &[s2, rs] : gb)
            if (auto merged = mergeSubst(s1, s2))
              out.emplace_back(mkAnd(mkOrSet(ls), mkOrSet(rs)), std::move(*merged));
        break;
      }
      for (const auto &[l2, s1] : a)
        for (const auto &[r2, s2] : b)
          if (auto merged = mergeSubst(s1, s2))
            out.emplace_back(s.andOf(l2, r2), std::move(*merged));
      break;
    }
    case Op::Binder: {
      const VarName x = s.binderVar(n);
      StepResult body = aux(s.binderBody(n), e);
      for (auto &[t2, sigma] : body) {
        if (const Value *v = sigma.lookup(x)) {
          NodeId specialized = s.applySubst(Substitution{{x, *v}}, t2);
          out.emplace_back(specialized, restrictSubst(sigma, x));
        } else {
          out.emplace_back(mkBinder(x, t2), sigma);
        }
      }
      break;
    }
    case Op::Ref: {
      const auto &eq = s.equation(s.refEquation(n));
      if (!eq.body)
        throw std::logic_error("equation '" + eq.name + "' has no body");
      out = aux(*eq.body, e);
      break;
    }
    }
    return out;
  }

  SpecProgram program_;
  MonitorOptions options_;
  EpsilonCache epsilon_;
  std::unordered_map<NodeId, StepResult> memo_;
  bool reportedUnhoused_ = false;
};

/// Whether the finite trace is a complete word of the program's language.
inline bool accepts(const SpecProgram &program, std::span<const Event> trace, MonitorOptions options = {}) {
  Monitor m(program, options);
  auto state = m.initial();
  for (const auto &e : trace)
    state = m.step(state, e);
  return m.acceptsFinal(state);
}

} // namespace texp
