#pragma once

#include <string>
#include <vector>

#include "texp/domains.hpp"
#include "texp/term_store.hpp"

namespace texp {

/// A loaded specification: the equation system, its main equation, and the
/// match context (domain plus derived type clauses).
///
/// Equations declared by the source come first in the store, in source
/// order; equations generated later by specialization are flagged
/// `generated`.
struct SpecProgram {
  TermStore store;
  EquationId main;
  NodeId mainNode;
  MatchContext context;

  [[nodiscard]] Domain domain() const { return context.domain; }

  /// Source-declared equations, in declaration order.
  [[nodiscard]] std::vector<EquationId> declaredEquations() const {
    std::vector<EquationId> out;
    for (std::uint32_t i = 0; i < store.equationCount(); ++i)
      if (!store.equation(EquationId{i}).generated)
        out.push_back(EquationId{i});
    return out;
  }
};

} // namespace texp
