#pragma once

// Unconstrained and constrained optimization over conditionally acyclic nets.

#include <cstddef>
#include <span>
#include <vector>

#include "tcpnet/constraints.hpp"
#include "tcpnet/dominance.hpp"
#include "tcpnet/model.hpp"

namespace tcpnet {

/// First variable in declaration order with no incoming cp-arc, no incoming
/// i-arc and no incident ci-arc. Throws NoRoot when none exists, and
/// InvalidArgument for an empty net.
VarIndex find_root(const TcpNet& net);

/// Topological sweep of the cp-arc subgraph (smallest index first). Bound
/// variables keep their value; every other one takes the best value of its
/// row. Throws NoRoot if the cp-arcs are cyclic.
Outcome forward_sweep(const TcpNet& net, const PartialAssignment& x = {});

/// Connected components of the uncommitted variables of `net`, joined by net
/// arcs (cp, i, ci and selector links) and by cliques over the scopes of
/// active constraints. `store_index[v]` is v's index in `store`; the
/// overload without it assumes the store ranges over `net` itself. Each
/// component is sorted; components are ordered by their smallest member.
std::vector<std::vector<VarIndex>> components(
    const TcpNet& net, const ConstraintStore& store,
    std::span<const VarIndex> store_index);
std::vector<std::vector<VarIndex>> components(const TcpNet& net,
                                              const ConstraintStore& store);

enum class SearchMode { First, All };

struct SearchOptions {
  /// Skip a root value whose strengthened store is covered by an earlier,
  /// strictly preferred value's store.
  bool prune = true;
  /// Per-test expansion budget of the non-dominance filter.
  std::size_t dominance_budget = kUnboundedBudget;
  /// Enumeration budget of the containment test.
  std::size_t entailment_budget = std::size_t{1} << 16;
};

struct SearchStats {
  std::size_t calls = 0;
  std::size_t inconsistent = 0;
  std::size_t pruned = 0;
  std::size_t dominance_tests = 0;
  std::size_t rejected = 0;
};

struct SolutionSet {
  /// Emission order; no element is dominated by an earlier one.
  std::vector<Outcome> solutions;
  SearchStats stats;
};

/// Branch and bound over root variables. With SearchMode::First every
/// recursive call stops at its first solution. Throws NoRoot when the net is
/// not conditionally acyclic and UnknownDominance when a finite dominance
/// budget runs out.
SolutionSet search_tcp(const TcpNet& net,
                       const std::vector<HardConstraint>& constraints,
                       SearchMode mode = SearchMode::All,
                       const SearchOptions& options = {});

/// Best-first total order over all outcomes built root by root. Throws
/// TooLarge above `cap` outcomes and NoRoot on a net without a root.
std::vector<Outcome> construct_satisfying_order(
    const TcpNet& net, std::size_t cap = std::size_t{1} << 20);

}  // namespace tcpnet
