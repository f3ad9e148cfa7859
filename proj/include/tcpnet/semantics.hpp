#pragma once

// Outcome-level semantics: single improving flips, the flip graph over the
// whole outcome space, and exhaustive oracles built on top of it. Everything
// here enumerates outcomes and is meant for small nets only.

#include <cstddef>
#include <optional>
#include <vector>

#include "tcpnet/model.hpp"

namespace tcpnet {

inline constexpr std::size_t kDefaultFlipGraphCap = std::size_t{1} << 20;

enum class FlipKind : std::uint8_t { Cp, Importance };

/// Why a flip is sanctioned. For CP-flips `worsened == improved` and
/// `ci_arc` is empty. For I-flips `ci_arc` names the governing ci-arc, or is
/// empty when an i-arc governs.
struct FlipLabel {
  FlipKind kind = FlipKind::Cp;
  VarIndex improved = 0;
  VarIndex worsened = 0;
  std::optional<std::size_t> ci_arc;

  bool operator==(const FlipLabel&) const = default;
};

struct Flip {
  Outcome outcome;
  FlipLabel label;
};

/// Every outcome reachable from o by one improving CP-flip or I-flip.
/// Ordered by CP-flips (variable, then value) before I-flips (i-arcs, then
/// ci-arcs, then improved value, then worsened value).
std::vector<Flip> improving_successors(const TcpNet& net, const Outcome& o);

/// Adjacency over outcome codes (see outcome_code), edges worse -> better.
class FlipGraph {
 public:
  std::size_t node_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size(); }

  std::span<const std::size_t> successors(std::size_t node) const {
    return {targets_.data() + offsets_[node],
            offsets_[node + 1] - offsets_[node]};
  }
  std::span<const FlipLabel> labels(std::size_t node) const {
    return {labels_.data() + offsets_[node],
            offsets_[node + 1] - offsets_[node]};
  }
  bool has_edge(std::size_t from, std::size_t to) const;

  /// Nodes reachable from `from` by a path of length >= 1.
  std::vector<bool> reachable_from(std::size_t from) const;

  /// A directed cycle as a node list (first node not repeated), if any.
  std::optional<std::vector<std::size_t>> find_cycle() const;

 private:
  friend FlipGraph build_flip_graph(const TcpNet&, std::size_t);
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> targets_;
  std::vector<FlipLabel> labels_;
};

/// Throws TooLarge when the outcome space exceeds `cap`.
FlipGraph build_flip_graph(const TcpNet& net,
                           std::size_t cap = kDefaultFlipGraphCap);

/// True iff `better` is reachable from `worse` through improving flips.
bool oracle_entails(const TcpNet& net, const Outcome& better,
                    const Outcome& worse,
                    std::size_t cap = kDefaultFlipGraphCap);

bool flip_graph_has_cycle(const TcpNet& net,
                          std::size_t cap = kDefaultFlipGraphCap);

/// A directed cycle of the flip graph as outcomes, if one exists.
std::optional<std::vector<Outcome>> find_flip_cycle(
    const TcpNet& net, std::size_t cap = kDefaultFlipGraphCap);

/// `order` lists every outcome exactly once, best first. Checks the CPT,
/// i-arc and CIT clauses of satisfaction directly. Throws IncompleteOrder if
/// `order` is not a permutation of the outcome space.
bool order_satisfies(const TcpNet& net, const std::vector<Outcome>& order);

/// Members of `feasible` that no other member is entailed-better than, in
/// input order. Entailment is taken over the full net.
std::vector<Outcome> oracle_nondominated(
    const TcpNet& net, const std::vector<Outcome>& feasible,
    std::size_t cap = kDefaultFlipGraphCap);

}  // namespace tcpnet
