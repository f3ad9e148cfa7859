#pragma once

// Extensional hard constraints and a propagation store kept generalized arc
// consistent.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tcpnet/model.hpp"

namespace tcpnet {

struct ConstraintSpec {
  std::vector<std::string> scope;
  std::vector<std::vector<std::string>> allowed;
};

struct HardConstraint {
  std::vector<VarIndex> scope;
  std::vector<std::vector<ValueIndex>> allowed;

  bool allows(const Outcome& o) const;
};

/// Resolves names against the net. Throws UnknownVariable, UnknownValue, and
/// InvalidArgument for arity mismatches or repeated scope variables.
HardConstraint compile_constraint(const TcpNet& net, const ConstraintSpec& spec);
std::vector<HardConstraint> compile_constraints(
    const TcpNet& net, const std::vector<ConstraintSpec>& specs);

bool satisfies_all(const std::vector<HardConstraint>& constraints,
                   const Outcome& o);

class ConstraintStore {
 public:
  /// Starts from full domains and propagates; check consistent() afterwards.
  ConstraintStore(const TcpNet& net, std::vector<HardConstraint> constraints);

  std::size_t size() const { return domains_.size(); }
  const std::vector<HardConstraint>& constraints() const { return *constraints_; }

  bool consistent() const { return consistent_; }
  bool contains(VarIndex v, ValueIndex value) const {
    return domains_[v][value] != 0;
  }
  std::size_t domain_count(VarIndex v) const;
  std::vector<ValueIndex> domain(VarIndex v) const;
  /// The value of a singleton domain.
  std::optional<ValueIndex> fixed_value(VarIndex v) const;
  bool committed(VarIndex v) const { return committed_[v]; }

  /// False when every tuple of the current domain product is allowed.
  bool active(std::size_t constraint) const;

  /// Full assignments inside the current domains satisfying every constraint
  /// (enumerated in outcome order). Throws BudgetExceeded when the domain
  /// product exceeds `budget`.
  std::vector<Outcome> solutions(std::size_t budget) const;
  /// Product of the current domain sizes, saturating.
  std::size_t search_space() const;

  /// Narrows x to {value} and propagates; returns consistent().
  bool restrict_to(VarIndex x, ValueIndex value);
  /// Marks every uncommitted singleton as committed and returns them.
  std::vector<std::pair<VarIndex, ValueIndex>> commit_singletons();

 private:
  bool propagate();

  std::shared_ptr<const std::vector<HardConstraint>> constraints_;
  std::vector<std::vector<char>> domains_;
  std::vector<bool> committed_;
  bool consistent_ = true;
};

struct Strengthened {
  ConstraintStore store;
  /// Variables newly committed: x itself plus every other uncommitted
  /// variable whose domain is now a singleton.
  std::vector<std::pair<VarIndex, ValueIndex>> induced;
};

/// Commits x = value and propagates to a fixpoint; nullopt if some domain
/// empties.
std::optional<Strengthened> strengthen(const ConstraintStore& store, VarIndex x,
                                       ValueIndex value);

enum class Entailment { Yes, No, Undecided };

const char* to_string(Entailment e);

/// Whether every solution of ci is a solution of cj. With `projected_out`
/// set, solutions are compared with that variable replaced by its value in
/// cj, i.e. ci's solutions stay feasible after switching to cj's value.
/// Exact when the search space of ci is at most `budget`; otherwise a
/// conservative check that can only answer Yes or Undecided.
Entailment store_entailed_by(const ConstraintStore& ci,
                             const ConstraintStore& cj,
                             std::optional<VarIndex> projected_out = {},
                             std::size_t budget = std::size_t{1} << 16);

}  // namespace tcpnet
