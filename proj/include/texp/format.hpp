#pragma once

#include <string>

#include "texp/domains.hpp"
#include "texp/program.hpp"

namespace texp {

namespace detail {

inline int precedence(Op op) {
  switch (op) {
  case Op::Binder:
    return 0;
  case Op::Shuffle:
    return 1;
  case Op::Or:
    return 2;
  case Op::And:
    return 3;
  case Op::Cat:
    return 4;
  case Op::Prefix:
    return 5;
  case Op::Eps:
  case Op::Ref:
    return 6;
  }
  return 6;
}

inline std::string_view symbol(Op op) {
  switch (op) {
  case Op::Shuffle:
    return " | ";
  case Op::Or:
    return " \\/ ";
  case Op::And:
    return " /\\ ";
  case Op::Cat:
    return " . ";
  default:
    return " ? ";
  }
}

// A binder body extends to the end of the enclosing expression, so a binder
// prints bare only where nothing follows it.
inline void printExpr(const TermStore &store, NodeId n, int minPrec, bool atRightEdge, std::string &out) {
  Op op = store.op(n);
  int prec = precedence(op);
  bool parens = op == Op::Binder ? !atRightEdge : prec < minPrec;
  if (parens) {
    out += '(';
    printExpr(store, n, 0, true, out);
    out += ')';
    return;
  }
  switch (op) {
  case Op::Eps:
    out += "eps";
    break;
  case Op::Ref:
    out += store.equation(store.refEquation(n)).name;
    break;
  case Op::Prefix:
    out += toString(store.eventType(n));
    out += " : ";
    printExpr(store, store.tail(n), 5, atRightEdge, out);
    break;
  case Op::Binder:
    out += "var ";
    out += store.binderVar(n);
    out += ". ";
    printExpr(store, store.binderBody(n), 0, true, out);
    break;
  case Op::Cat:
  case Op::And:
  case Op::Or:
  case Op::Shuffle:
    printExpr(store, store.left(n), prec, false, out);
    out += symbol(op);
    printExpr(store, store.right(n), prec + 1, atRightEdge, out);
    break;
  }
}

inline std::string formatOperand(const Guard::Operand &o) {
  if (const auto *x = std::get_if<VarName>(&o))
    return *x;
  return toString(std::get<Value>(o));
}

} // namespace detail

/// Renders one expression in the surface syntax with minimal parentheses.
inline std::string formatExpr(const TermStore &store, NodeId n) {
  std::string out;
  detail::printExpr(store, n, 0, true, out);
  return out;
}

inline std::string formatClause(const TypeClause &c) {
  std::string out = "type " + toString(c.head) + " matches " + toString(c.body);
  for (std::size_t i = 0; i < c.guards.size(); ++i) {
    const auto &g = c.guards[i];
    out += i == 0 ? " where " : ", ";
    out += detail::formatOperand(g.lhs);
    out += ' ';
    out += toString(g.op);
    out += ' ';
    out += detail::formatOperand(g.rhs);
  }
  return out + ";";
}

/// Source text that parses back to the same equation graphs.
inline std::string formatSpec(const SpecProgram &p) {
  std::string out;
  out += "domain " + std::string(domainName(p.domain())) + ";\n";
  out += "main " + p.store.equation(p.main).name + ";\n\n";
  for (EquationId eq : p.declaredEquations()) {
    const auto &e = p.store.equation(eq);
    out += e.name + " = " + formatExpr(p.store, *e.body) + ";\n";
  }
  if (!p.context.clauses.empty())
    out += '\n';
  for (const auto &c : p.context.clauses)
    out += formatClause(c) + "\n";
  return out;
}

} // namespace texp
