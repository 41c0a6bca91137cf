#pragma once

#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "texp/domains.hpp"
#include "texp/program.hpp"

namespace texp {

class BoundExceeded : public std::runtime_error {
public:
  BoundExceeded(std::size_t length, std::size_t bound)
      : std::runtime_error("trace of length " + std::to_string(length) + " exceeds the oracle bound " +
                           std::to_string(bound)) {}
};

/// Reference checker for the word problem, kept independent of the
/// monitor: expressions are plain trees, equations are unfolded on demand
/// with their pending substitution, and every rule choice is explored by
/// backtracking. No sharing, no frontier sets, no simplification.
/// Exponential; meant for short traces.
class NaiveOracle {
public:
  static constexpr std::size_t kDefaultBound = 8;

  explicit NaiveOracle(const SpecProgram &program, std::size_t bound = kDefaultBound)
      : context_(program.context), bound_(bound), graphSize_(program.store.nodeCount()) {
    for (EquationId eq : program.declaredEquations()) {
      const auto &e = program.store.equation(eq);
      equations_[e.name] = convert(program.store, *e.body);
    }
    main_ = std::make_shared<const Term>(Term{Op::Ref, {}, {}, program.store.equation(program.main).name, {}, {}, {}});
  }

  /// Whether the whole trace is a word of the language.
  bool accepts(std::span<const Event> trace) const {
    check(trace);
    return search(main_, trace, budgetFor(trace), true);
  }

  /// Whether the trace is a prefix of some word (no violation yet).
  bool alive(std::span<const Event> trace) const {
    check(trace);
    return search(main_, trace, budgetFor(trace), false);
  }

  [[nodiscard]] std::size_t bound() const { return bound_; }

private:
  struct Term;
  using TermPtr = std::shared_ptr<const Term>;
  struct Term {
    Op op;
    EventType type;
    VarName var;
    std::string equation;
    Substitution pending;
    TermPtr left;
    TermPtr right;
  };
  using Successors = std::vector<std::pair<TermPtr, Substitution>>;

  void check(std::span<const Event> trace) const {
    if (trace.size() > bound_)
      throw BoundExceeded(trace.size(), bound_);
  }

  [[nodiscard]] std::size_t budgetFor(std::span<const Event> trace) const { return trace.size() + graphSize_; }

  static TermPtr make(Term t) { return std::make_shared<const Term>(std::move(t)); }

  static TermPtr convert(const TermStore &store, NodeId n) {
    switch (store.op(n)) {
    case Op::Eps:
      return make({Op::Eps, {}, {}, {}, {}, {}, {}});
    case Op::Prefix:
      return make({Op::Prefix, store.eventType(n), {}, {}, {}, convert(store, store.tail(n)), {}});
    case Op::Binder:
      return make({Op::Binder, {}, store.binderVar(n), {}, {}, convert(store, store.binderBody(n)), {}});
    case Op::Ref:
      return make({Op::Ref, {}, {}, store.equation(store.refEquation(n)).name, {}, {}, {}});
    default:
      return make({store.op(n), {}, {}, {}, {}, convert(store, store.left(n)), convert(store, store.right(n))});
    }
  }

  static Pattern substitute(const Pattern &p, const Substitution &s) {
    if (const auto *v = p.as<VarPattern>()) {
      const Value *bound = s.lookup(v->name);
      return bound ? Pattern::literal(*bound) : p;
    }
    if (const auto *l = p.as<ListPattern>()) {
      std::vector<Pattern> items;
      for (const auto &q : l->items)
        items.push_back(substitute(q, s));
      std::optional<Pattern> tail;
      if (l->tail)
        tail = substitute(*l->tail, s);
      return Pattern::list(std::move(items), std::move(tail));
    }
    return p;
  }

  static TermPtr substitute(const TermPtr &t, const Substitution &s) {
    if (s.empty())
      return t;
    switch (t->op) {
    case Op::Eps:
      return t;
    case Op::Prefix: {
      EventType type{t->type.head, {}};
      for (const auto &p : t->type.args)
        type.args.push_back(substitute(p, s));
      return make({Op::Prefix, std::move(type), {}, {}, {}, substitute(t->left, s), {}});
    }
    case Op::Binder: {
      Substitution inner = s;
      inner.erase(t->var);
      return make({Op::Binder, {}, t->var, {}, {}, substitute(t->left, inner), {}});
    }
    case Op::Ref: {
      // Bindings already pending were substituted first; later ones only
      // reach variables still free.
      Substitution pending = t->pending;
      for (const auto &[x, v] : s)
        if (!pending.contains(x))
          pending.bind(x, v);
      return make({Op::Ref, {}, {}, t->equation, std::move(pending), {}, {}});
    }
    default:
      return make({t->op, {}, {}, {}, {}, substitute(t->left, s), substitute(t->right, s)});
    }
  }

  TermPtr unfold(const Term &ref) const { return substitute(equations_.at(ref.equation), ref.pending); }

  bool nullable(const TermPtr &t, std::size_t budget) const {
    switch (t->op) {
    case Op::Eps:
      return true;
    case Op::Prefix:
      return false;
    case Op::Binder:
      return nullable(t->left, budget);
    case Op::Or:
      return nullable(t->left, budget) || nullable(t->right, budget);
    case Op::Ref:
      return budget > 0 && nullable(unfold(*t), budget - 1);
    default:
      return nullable(t->left, budget) && nullable(t->right, budget);
    }
  }

  Successors derive(const TermPtr &t, const Event &e, std::size_t budget) const {
    Successors out;
    switch (t->op) {
    case Op::Eps:
      break;
    case Op::Prefix:
      if (auto sigma = match(e, t->type, context_))
        out.emplace_back(t->left, std::move(*sigma));
      break;
    case Op::Or:
      for (auto &s : derive(t->left, e, budget))
        out.push_back(std::move(s));
      for (auto &s : derive(t->right, e, budget))
        out.push_back(std::move(s));
      break;
    case Op::Shuffle:
      for (auto &[l, sigma] : derive(t->left, e, budget))
        out.emplace_back(make({Op::Shuffle, {}, {}, {}, {}, l, t->right}), sigma);
      for (auto &[r, sigma] : derive(t->right, e, budget))
        out.emplace_back(make({Op::Shuffle, {}, {}, {}, {}, t->left, r}), sigma);
      break;
    case Op::Cat:
      for (auto &[l, sigma] : derive(t->left, e, budget))
        out.emplace_back(make({Op::Cat, {}, {}, {}, {}, l, t->right}), sigma);
      if (nullable(t->left, budget))
        for (auto &s : derive(t->right, e, budget))
          out.push_back(std::move(s));
      break;
    case Op::And: {
      auto ls = derive(t->left, e, budget);
      auto rs = derive(t->right, e, budget);
      for (const auto &[l, s1] : ls)
        for (const auto &[r, s2] : rs) {
          // σ1 ∪ σ2, defined only when they agree on shared variables.
          Substitution merged = s1;
          bool agree = true;
          for (const auto &[x, v] : s2)
            agree = agree && merged.bind(x, v);
          if (agree)
            out.emplace_back(make({Op::And, {}, {}, {}, {}, l, r}), std::move(merged));
        }
      break;
    }
    case Op::Binder:
      for (auto &[body, sigma] : derive(t->left, e, budget)) {
        if (const Value *v = sigma.lookup(t->var)) {
          Substitution rest = sigma;
          rest.erase(t->var);
          out.emplace_back(substitute(body, Substitution{{t->var, *v}}), std::move(rest));
        } else {
          out.emplace_back(make({Op::Binder, {}, t->var, {}, {}, body, {}}), sigma);
        }
      }
      break;
    case Op::Ref:
      if (budget > 0)
        return derive(unfold(*t), e, budget - 1);
      break;
    }
    return out;
  }

  bool search(const TermPtr &t, std::span<const Event> rest, std::size_t budget, bool complete) const {
    if (rest.empty())
      return !complete || nullable(t, budget);
    for (const auto &[next, sigma] : derive(t, rest.front(), budget))
      if (sigma.empty() && search(next, rest.subspan(1), budget, complete))
        return true;
    return false;
  }

  MatchContext context_;
  std::map<std::string, TermPtr> equations_;
  TermPtr main_;
  std::size_t bound_;
  std::size_t graphSize_;
};

} // namespace texp
