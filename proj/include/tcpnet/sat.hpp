#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace tcpnet {

/// CNF over variables 1..variable_count; literal +v / -v as in DIMACS.
struct CnfFormula {
  std::size_t variable_count = 0;
  std::vector<std::vector<int>> clauses;

  /// Longest clause length (0 for the empty formula).
  std::size_t width() const;
  /// model[v - 1] is the value of variable v.
  bool evaluate(const std::vector<bool>& model) const;
  /// Throws InvalidArgument on a zero literal or an index out of range.
  void check() const;
};

/// Satisfiability of a width <= 2 formula via the implication graph and its
/// strongly connected components. The model is the lexicographically
/// smallest one with false < true. Throws WidthExceeded for wider clauses.
std::optional<std::vector<bool>> two_sat_solve(const CnfFormula& f);

/// Complete backtracking search with unit propagation; branches on the
/// lowest unassigned variable, false first.
std::optional<std::vector<bool>> dpll_solve(const CnfFormula& f);

/// two_sat_solve for width <= 2, dpll_solve otherwise.
std::optional<std::vector<bool>> sat_solve(const CnfFormula& f);

}  // namespace tcpnet
