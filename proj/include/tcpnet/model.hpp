#pragma once

// TCP-net data model: variables with finite domains, conditional preference
// tables, unconditional (i-arc) and conditional (ci-arc) importance.
//
// Two representations exist. NetSpec is the name-based description that
// parsers and tests produce; it may be arbitrarily broken and is what
// validate_net() inspects. TcpNet is the compiled, index-based, immutable
// form that every algorithm consumes; it can only be obtained from a spec
// that validates without errors.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tcpnet/error.hpp"

namespace tcpnet {

using VarIndex = std::size_t;
using ValueIndex = std::size_t;

/// Total assignment, indexed by variable position in its net.
using Outcome = std::vector<ValueIndex>;

/// Name-based partial assignment (variable name -> value label).
using PartialAssignment = std::map<std::string, std::string>;

// ---------------------------------------------------------------------------
// Name-based description

struct VariableSpec {
  std::string name;
  std::vector<std::string> domain;
};

struct OrderRowSpec {
  PartialAssignment when;
  /// (better, worse) value pairs; transitively closed when compiled.
  std::vector<std::pair<std::string, std::string>> pairs;
};

struct CptSpec {
  std::string variable;
  std::vector<OrderRowSpec> rows;
};

struct CitRowSpec {
  PartialAssignment when;
  std::string more_important;
};

struct CiArcSpec {
  std::string first;
  std::string second;
  std::vector<std::string> selector;
  std::vector<CitRowSpec> rows;
};

struct NetSpec {
  std::vector<VariableSpec> variables;
  std::vector<std::pair<std::string, std::string>> cp_arcs;
  std::vector<std::pair<std::string, std::string>> i_arcs;
  std::vector<CiArcSpec> ci_arcs;
  std::vector<CptSpec> cpts;
};

// ---------------------------------------------------------------------------
// Validation

enum class Severity { Warning, Error };

struct ValidationIssue {
  Severity severity;
  std::string code;
  std::string location;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;

  bool has(std::string_view code) const;
};

class ValidationFailed : public Error {
 public:
  explicit ValidationFailed(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

ValidationReport validate_net(const NetSpec& spec);

// ---------------------------------------------------------------------------
// Compiled form

/// Strict partial order over the values of one variable, stored transitively
/// closed as a dense relation matrix.
class PreferenceOrder {
 public:
  PreferenceOrder() = default;
  explicit PreferenceOrder(std::size_t domain_size);

  /// Closes the given (better, worse) pairs; nullopt if the closure is cyclic.
  static std::optional<PreferenceOrder> from_pairs(
      std::size_t domain_size,
      std::span<const std::pair<ValueIndex, ValueIndex>> pairs);

  std::size_t domain_size() const { return size_; }
  bool prefers(ValueIndex better, ValueIndex worse) const {
    return rel_[better * size_ + worse] != 0;
  }
  bool empty() const;

  /// Hasse diagram of the order, in (better, worse) lexicographic order.
  std::vector<std::pair<ValueIndex, ValueIndex>> cover_pairs() const;

  /// Best-first linear extension; among incomparable candidates the value
  /// declared first in the domain wins.
  std::vector<ValueIndex> linear_extension() const;

  /// First value of linear_extension().
  ValueIndex best() const;

  bool operator==(const PreferenceOrder&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint8_t> rel_;
};

struct Variable {
  std::string name;
  std::vector<std::string> domain;

  bool operator==(const Variable&) const = default;
};

struct Arc {
  VarIndex from;
  VarIndex to;

  auto operator<=>(const Arc&) const = default;
};

struct CpTable {
  /// Parents in declaration order; rows are indexed by the mixed-radix code of
  /// the parents' values (first parent most significant).
  std::vector<VarIndex> parents;
  std::vector<PreferenceOrder> rows;
  /// Rows absent from the source document; they hold the empty order.
  std::vector<bool> specified;

  bool operator==(const CpTable&) const = default;
};

enum class Importance : std::uint8_t { Unspecified, First, Second };

/// Conditional importance arc. Endpoints are stored with first < second.
struct CiArc {
  VarIndex first;
  VarIndex second;
  std::vector<VarIndex> selector;  // declaration order
  std::vector<Importance> rows;    // mixed-radix over selector values

  /// The more important endpoint for the given row, if the row exists.
  std::optional<VarIndex> winner(std::size_t row) const;
  bool operator==(const CiArc&) const = default;
};

class TcpNet {
 public:
  TcpNet() = default;

  /// Validates and compiles; throws ValidationFailed when the report has
  /// errors.
  static TcpNet build(const NetSpec& spec);

  NetSpec to_spec() const;

  std::size_t size() const { return variables_.size(); }
  const std::vector<Variable>& variables() const { return variables_; }
  const Variable& variable(VarIndex v) const { return variables_[v]; }
  std::size_t domain_size(VarIndex v) const {
    return variables_[v].domain.size();
  }

  std::optional<VarIndex> find(std::string_view name) const;
  /// Throws UnknownVariable.
  VarIndex index_of(std::string_view name) const;
  /// Throws UnknownValue.
  ValueIndex value_index(VarIndex v, std::string_view label) const;

  const std::vector<Arc>& cp_arcs() const { return cp_arcs_; }
  const std::vector<Arc>& i_arcs() const { return i_arcs_; }
  const std::vector<CiArc>& ci_arcs() const { return ci_arcs_; }
  const CpTable& cpt(VarIndex v) const { return cpts_[v]; }
  const std::vector<VarIndex>& parents(VarIndex v) const {
    return cpts_[v].parents;
  }
  bool is_parent(VarIndex parent, VarIndex child) const;

  /// CPT row of v selected by the parents' values in o.
  const PreferenceOrder& row(VarIndex v, const Outcome& o) const;

  /// Union of all selector sets, in declaration order.
  std::vector<VarIndex> selector_variables() const;

  /// Number of outcomes, saturating at SIZE_MAX.
  std::size_t outcome_count() const;

  bool operator==(const TcpNet&) const = default;

 private:
  std::vector<Variable> variables_;
  std::vector<Arc> cp_arcs_;
  std::vector<Arc> i_arcs_;
  std::vector<CiArc> ci_arcs_;
  std::vector<CpTable> cpts_;
};

/// Re-validates a compiled net (used to check derived nets).
ValidationReport validate_net(const TcpNet& net);

/// Restricts the net to the variables not bound by k: CPT rows and CIT rows
/// are restricted to k, ci-arcs whose importance becomes fixed turn into
/// i-arcs, ci-arcs left without rows disappear, and every arc touching a
/// bound variable is dropped.
TcpNet reduce(const TcpNet& net, const PartialAssignment& k);

/// Keeps only the given variables; arcs leaving the set must not exist.
TcpNet subnet(const TcpNet& net, std::span<const VarIndex> keep);

// ---------------------------------------------------------------------------
// Assignment helpers

/// Mixed-radix code of the values of `vars` in o (first variable most
/// significant).
std::size_t assignment_code(const TcpNet& net, std::span<const VarIndex> vars,
                            const Outcome& o);

/// Inverse of assignment_code for the listed variables.
std::vector<ValueIndex> decode_assignment(const TcpNet& net,
                                          std::span<const VarIndex> vars,
                                          std::size_t code);

/// Product of the domain sizes of `vars`, saturating at SIZE_MAX.
std::size_t assignment_count(const TcpNet& net, std::span<const VarIndex> vars);

/// Outcome <-> dense index over the whole outcome space (variable 0 most
/// significant).
std::size_t outcome_code(const TcpNet& net, const Outcome& o);
Outcome decode_outcome(const TcpNet& net, std::size_t code);

/// "X=v,Y=w" in declaration order.
std::string format_outcome(const TcpNet& net, const Outcome& o);
std::string format_assignment(const PartialAssignment& k);

/// Parses comma-separated X=v pairs (order-insensitive, whitespace ignored).
PartialAssignment parse_assignment(std::string_view text);

/// Resolves a name-based assignment against the net; throws UnknownVariable /
/// UnknownValue, and IncompleteOutcome unless every variable is bound.
Outcome to_outcome(const TcpNet& net, const PartialAssignment& k);
PartialAssignment to_assignment(const TcpNet& net, const Outcome& o);

/// Throws IncompleteOutcome if o is not a total assignment over the net.
void check_outcome(const TcpNet& net, const Outcome& o);

}  // namespace tcpnet
