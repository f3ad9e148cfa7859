#pragma once

// Dependency graph, w-directed graphs and the conditional acyclicity test.
//
// The dependency graph is a mixed multigraph: directed edges come from
// cp-arcs, i-arcs and selector -> endpoint links, undirected edges from
// ci-arcs. A parallel directed/undirected pair between the same two
// variables is kept and forms a cycle of length two.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tcpnet/model.hpp"
#include "tcpnet/sat.hpp"

namespace tcpnet {

struct UndirectedEdge {
  VarIndex first;
  VarIndex second;
  std::size_t ci_arc;  // index into TcpNet::ci_arcs()
};

struct DependencyGraph {
  std::size_t node_count = 0;
  std::vector<Arc> directed;              // sorted, deduplicated
  std::vector<UndirectedEdge> undirected;  // in ci-arc order
};

DependencyGraph dependency_graph(const TcpNet& net);

struct WDirectedGraph {
  std::size_t node_count = 0;
  std::vector<Arc> edges;  // sorted, deduplicated
};

/// `w` must bind every selector variable; throws IncompleteSelectorAssignment
/// otherwise. Bindings of other variables are ignored.
WDirectedGraph w_directed_graph(const TcpNet& net, const PartialAssignment& w);
/// Index form: only the selector entries of `w` are read.
WDirectedGraph w_directed_graph(const TcpNet& net, const Outcome& w);

/// Vertices of a directed cycle, each edge vertices[i] -> vertices[i + 1]
/// and back to the front; nullopt when the graph is acyclic.
std::optional<std::vector<VarIndex>> find_directed_cycle(
    std::size_t node_count, const std::vector<Arc>& edges);

/// Edge i joins vertices[i] and vertices[(i + 1) % size]. A directed edge
/// always points from vertices[i] to vertices[i + 1]; cycles with directed
/// edges are stored in that traversal direction.
struct SemiDirectedCycle {
  std::vector<VarIndex> vertices;
  /// Per edge: the ci-arc for an undirected edge, empty for a directed one.
  std::vector<std::optional<std::size_t>> ci;

  bool has_direction() const;
  /// Positions i whose edge is a ci-arc.
  std::vector<std::size_t> ci_positions() const;
};

struct CycleEnumeration {
  std::vector<SemiDirectedCycle> cycles;
  bool cap_exceeded = false;
};

inline constexpr std::size_t kDefaultCycleCap = 10'000;
inline constexpr std::size_t kDefaultSearchSteps = 50'000'000;

/// All semi-directed cycles of the dependency graph, in canonical order
/// (by smallest vertex, then depth-first discovery). Stops with
/// cap_exceeded once more than `cap` cycles are found or the depth-first
/// search exceeds `max_steps` steps.
CycleEnumeration enumerate_semi_directed_cycles(
    const TcpNet& net, std::size_t cap = kDefaultCycleCap,
    std::size_t max_steps = kDefaultSearchSteps);

enum class CycleStatus { Acyclic, ConditionallyDirected, Inconclusive };

const char* to_string(CycleStatus status);

struct CycleResult {
  CycleStatus status = CycleStatus::Inconclusive;
  /// Assignment over the net's variables whose w-directed graph contains
  /// the cycle; only selector entries are meaningful. Set for
  /// ConditionallyDirected.
  std::optional<Outcome> witness;
};

/// ConditionallyDirected when the ci-arcs' selector sets are pairwise
/// disjoint and each ci-arc has some row along a common cycle direction;
/// Inconclusive ("maybe acyclic") otherwise.
CycleResult cycle_check_necessary(const TcpNet& net,
                                  const SemiDirectedCycle& cycle);

/// Acyclic when some pair of ci-arcs blocks every direction under every
/// assignment to their common selectors; Inconclusive otherwise.
CycleResult cycle_check_sufficient(const TcpNet& net,
                                   const SemiDirectedCycle& cycle,
                                   std::size_t budget = std::size_t{1} << 16);

/// Exact test by enumeration over the shared selector variables. Throws
/// BudgetExceeded when there are more than `budget` shared assignments.
CycleResult cycle_check_shared_exact(const TcpNet& net,
                                     const SemiDirectedCycle& cycle,
                                     std::size_t budget = std::size_t{1} << 16);

/// The CNF whose models orient every ci-arc of a cycle along one direction:
/// the traversal direction when `forward`, the reverse otherwise. Cycles
/// with directed edges only admit the forward direction. Variable i + 1
/// stands for selector_vars[i]; value index 1 is true.
struct CycleCnf {
  CnfFormula formula;
  std::vector<VarIndex> selector_vars;
};

/// Throws NonBinarySelector, and InvalidArgument for a backward request on
/// a cycle with directed edges.
CycleCnf encode_cycle(const TcpNet& net, const SemiDirectedCycle& cycle,
                      bool forward = true);

/// Exact test through the CNF reduction; all-undirected cycles are solved
/// once per orientation. Throws NonBinarySelector.
CycleResult cycle_check_sat(const TcpNet& net, const SemiDirectedCycle& cycle);

enum class AcyclicityStatus { ConditionallyAcyclic, ConditionallyCyclic, Unknown };

const char* to_string(AcyclicityStatus status);

enum class CheckMethod { Auto, Brute, Cycles, Sat };

/// Which stage settled the verdict.
enum class DecidedBy {
  DirectedCycle,
  Forest,
  NoSemiDirectedCycle,
  Necessary,
  Sufficient,
  SharedExact,
  Sat,
  Exhaustive,
  None,
};

const char* to_string(DecidedBy stage);

struct AcyclicityPolicy {
  CheckMethod method = CheckMethod::Auto;
  std::size_t cycle_cap = kDefaultCycleCap;
  std::size_t search_steps = kDefaultSearchSteps;
  std::size_t shared_budget = std::size_t{1} << 16;
  std::size_t fallback_budget = std::size_t{1} << 16;
};

struct AcyclicityVerdict {
  AcyclicityStatus status = AcyclicityStatus::Unknown;
  DecidedBy decided_by = DecidedBy::None;
  /// For ConditionallyCyclic: an assignment to S(N) (other entries 0) and a
  /// directed cycle of its w-directed graph.
  std::optional<Outcome> witness;
  std::vector<VarIndex> cycle;
  std::size_t cycles_examined = 0;
  std::string note;
};

AcyclicityVerdict check_conditional_acyclicity(
    const TcpNet& net, const AcyclicityPolicy& policy = {});

/// The selector entries of w as a name-based assignment.
PartialAssignment selector_assignment(const TcpNet& net, const Outcome& w);

/// True iff every edge of `cycle` is an edge of w's w-directed graph.
bool witness_holds(const TcpNet& net, const Outcome& w,
                   const std::vector<VarIndex>& cycle);

}  // namespace tcpnet
