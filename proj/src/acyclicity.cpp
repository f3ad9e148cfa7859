#include "tcpnet/acyclicity.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tcpnet {

const char* to_string(CycleStatus status) {
  switch (status) {
    case CycleStatus::Acyclic: return "Acyclic";
    case CycleStatus::ConditionallyDirected: return "ConditionallyDirected";
    case CycleStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(AcyclicityStatus status) {
  switch (status) {
    case AcyclicityStatus::ConditionallyAcyclic: return "ConditionallyAcyclic";
    case AcyclicityStatus::ConditionallyCyclic: return "ConditionallyCyclic";
    case AcyclicityStatus::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(DecidedBy stage) {
  switch (stage) {
    case DecidedBy::DirectedCycle: return "directed-cycle";
    case DecidedBy::Forest: return "forest";
    case DecidedBy::NoSemiDirectedCycle: return "no-semi-directed-cycle";
    case DecidedBy::Necessary: return "necessary";
    case DecidedBy::Sufficient: return "sufficient";
    case DecidedBy::SharedExact: return "shared-exact";
    case DecidedBy::Sat: return "sat";
    case DecidedBy::Exhaustive: return "exhaustive";
    case DecidedBy::None: return "none";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Graphs

DependencyGraph dependency_graph(const TcpNet& net) {
  DependencyGraph g;
  g.node_count = net.size();
  std::set<Arc> directed(net.cp_arcs().begin(), net.cp_arcs().end());
  directed.insert(net.i_arcs().begin(), net.i_arcs().end());
  for (std::size_t i = 0; i < net.ci_arcs().size(); ++i) {
    const CiArc& arc = net.ci_arcs()[i];
    for (VarIndex s : arc.selector) {
      directed.insert({s, arc.first});
      directed.insert({s, arc.second});
    }
    g.undirected.push_back({arc.first, arc.second, i});
  }
  g.directed.assign(directed.begin(), directed.end());
  return g;
}

WDirectedGraph w_directed_graph(const TcpNet& net, const Outcome& w) {
  const DependencyGraph dg = dependency_graph(net);
  std::set<Arc> edges(dg.directed.begin(), dg.directed.end());
  for (const CiArc& arc : net.ci_arcs()) {
    const auto winner = arc.winner(assignment_code(net, arc.selector, w));
    if (!winner) continue;
    const VarIndex loser = *winner == arc.first ? arc.second : arc.first;
    edges.insert({*winner, loser});
  }
  return {net.size(), {edges.begin(), edges.end()}};
}

WDirectedGraph w_directed_graph(const TcpNet& net, const PartialAssignment& w) {
  Outcome values(net.size(), 0);
  std::vector<bool> bound(net.size(), false);
  for (const auto& [name, label] : w) {
    const VarIndex v = net.index_of(name);
    values[v] = net.value_index(v, label);
    bound[v] = true;
  }
  for (VarIndex s : net.selector_variables()) {
    if (!bound[s]) {
      throw Error(ErrorCode::IncompleteSelectorAssignment,
                  "selector variable '" + net.variable(s).name +
                      "' is not assigned");
    }
  }
  return w_directed_graph(net, values);
}

std::optional<std::vector<VarIndex>> find_directed_cycle(
    std::size_t node_count, const std::vector<Arc>& edges) {
  std::vector<std::vector<VarIndex>> adj(node_count);
  for (const Arc& a : edges) adj[a.from].push_back(a.to);
  enum : std::uint8_t { White, Grey, Black };
  std::vector<std::uint8_t> colour(node_count, White);
  std::vector<VarIndex> parent(node_count, 0);
  std::vector<std::pair<VarIndex, std::size_t>> stack;
  for (VarIndex root = 0; root < node_count; ++root) {
    if (colour[root] != White) continue;
    colour[root] = Grey;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == adj[v].size()) {
        colour[v] = Black;
        stack.pop_back();
        continue;
      }
      const VarIndex to = adj[v][next++];
      if (colour[to] == Grey) {
        std::vector<VarIndex> cycle{v};
        for (VarIndex u = v; u != to;) {
          u = parent[u];
          cycle.push_back(u);
        }
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (colour[to] == White) {
        parent[to] = v;
        colour[to] = Grey;
        stack.emplace_back(to, 0);
      }
    }
  }
  return std::nullopt;
}

bool witness_holds(const TcpNet& net, const Outcome& w,
                   const std::vector<VarIndex>& cycle) {
  if (cycle.empty()) return false;
  const WDirectedGraph g = w_directed_graph(net, w);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Arc edge{cycle[i], cycle[(i + 1) % cycle.size()]};
    if (!std::binary_search(g.edges.begin(), g.edges.end(), edge)) return false;
  }
  return true;
}

PartialAssignment selector_assignment(const TcpNet& net, const Outcome& w) {
  PartialAssignment out;
  for (VarIndex s : net.selector_variables()) {
    out[net.variable(s).name] = net.variable(s).domain[w[s]];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Semi-directed cycles

bool SemiDirectedCycle::has_direction() const {
  return std::any_of(ci.begin(), ci.end(),
                     [](const auto& c) { return !c.has_value(); });
}

std::vector<std::size_t> SemiDirectedCycle::ci_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ci.size(); ++i) {
    if (ci[i]) out.push_back(i);
  }
  return out;
}

namespace {

// Orientation of a multigraph edge seen from the vertex that owns the entry.
enum class Step : std::int8_t { Backward = -1, Undirected = 0, Forward = 1 };

struct Incidence {
  std::size_t edge;
  VarIndex to;
  Step step;
  std::optional<std::size_t> ci;
};

std::vector<std::vector<Incidence>> mixed_adjacency(const DependencyGraph& g) {
  std::vector<std::vector<Incidence>> adj(g.node_count);
  std::size_t id = 0;
  for (const Arc& a : g.directed) {
    adj[a.from].push_back({id, a.to, Step::Forward, std::nullopt});
    adj[a.to].push_back({id, a.from, Step::Backward, std::nullopt});
    ++id;
  }
  for (const auto& e : g.undirected) {
    adj[e.first].push_back({id, e.second, Step::Undirected, e.ci_arc});
    adj[e.second].push_back({id, e.first, Step::Undirected, e.ci_arc});
    ++id;
  }
  for (auto& list : adj) {
    std::stable_sort(list.begin(), list.end(),
                     [](const Incidence& a, const Incidence& b) {
                       return a.to < b.to;
                     });
  }
  return adj;
}

// Same cycle traversed the other way round, keeping vertices[0].
SemiDirectedCycle reversed(const SemiDirectedCycle& c) {
  const std::size_t k = c.vertices.size();
  SemiDirectedCycle r;
  r.vertices.push_back(c.vertices[0]);
  for (std::size_t i = k - 1; i >= 1; --i) r.vertices.push_back(c.vertices[i]);
  for (std::size_t j = 0; j < k; ++j) r.ci.push_back(c.ci[k - 1 - j]);
  return r;
}

class CycleEnumerator {
 public:
  CycleEnumerator(const DependencyGraph& g, std::size_t cap,
                  std::size_t max_steps)
      : adj_(mixed_adjacency(g)),
        cap_(cap),
        max_steps_(max_steps),
        on_path_(g.node_count, false) {}

  CycleEnumeration run() {
    for (VarIndex s = 0; s < adj_.size() && !out_.cap_exceeded; ++s) {
      start_ = s;
      path_ = {s};
      on_path_[s] = true;
      dfs(s);
      on_path_[s] = false;
    }
    return std::move(out_);
  }

 private:
  struct PathEdge {
    std::size_t id;
    Step step;
    std::optional<std::size_t> ci;
  };

  void dfs(VarIndex v) {
    for (const Incidence& inc : adj_[v]) {
      if (out_.cap_exceeded) return;
      if (++steps_ > max_steps_) {
        out_.cap_exceeded = true;
        return;
      }
      if (inc.step == Step::Forward && backward_ > 0) continue;
      if (inc.step == Step::Backward && forward_ > 0) continue;
      if (inc.to == start_) {
        close(inc);
        continue;
      }
      if (inc.to < start_ || on_path_[inc.to]) continue;
      push(inc);
      dfs(inc.to);
      pop(inc);
    }
  }

  void push(const Incidence& inc) {
    path_.push_back(inc.to);
    edges_.push_back({inc.edge, inc.step, inc.ci});
    on_path_[inc.to] = true;
    count(inc.step, +1);
  }
  void pop(const Incidence& inc) {
    path_.pop_back();
    edges_.pop_back();
    on_path_[inc.to] = false;
    count(inc.step, -1);
  }
  void count(Step step, int delta) {
    if (step == Step::Forward) forward_ += delta;
    if (step == Step::Backward) backward_ += delta;
    if (step == Step::Undirected) undirected_ += delta;
  }

  void close(const Incidence& inc) {
    if (edges_.empty()) return;
    if (edges_.size() == 1) {
      // Two parallel edges: each pair is met twice, keep one order.
      if (inc.edge <= edges_[0].id) return;
    } else if (path_[1] > path_.back()) {
      return;
    }
    if (undirected_ + (inc.step == Step::Undirected ? 1 : 0) == 0) return;

    SemiDirectedCycle cycle;
    cycle.vertices = path_;
    for (const auto& e : edges_) cycle.ci.push_back(e.ci);
    cycle.ci.push_back(inc.ci);
    const bool backward = backward_ > 0 || inc.step == Step::Backward;
    out_.cycles.push_back(backward ? reversed(cycle) : std::move(cycle));
    if (out_.cycles.size() > cap_) out_.cap_exceeded = true;
  }

  std::vector<std::vector<Incidence>> adj_;
  std::size_t cap_;
  std::size_t max_steps_;
  std::size_t steps_ = 0;
  std::vector<bool> on_path_;
  VarIndex start_ = 0;
  std::vector<VarIndex> path_;
  std::vector<PathEdge> edges_;
  int forward_ = 0, backward_ = 0, undirected_ = 0;
  CycleEnumeration out_;
};

// True iff some semi-directed cycle exists: an undirected edge {a, b} lies on
// one exactly when b reaches a (or a reaches b) without using that edge,
// following directed edges forward and undirected edges either way.
bool has_semi_directed_cycle(const DependencyGraph& g) {
  const auto adj = mixed_adjacency(g);
  auto reaches = [&](VarIndex from, VarIndex to, std::size_t banned) {
    std::vector<bool> seen(adj.size(), false);
    std::vector<VarIndex> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      const VarIndex v = stack.back();
      stack.pop_back();
      for (const Incidence& inc : adj[v]) {
        if (inc.edge == banned || inc.step == Step::Backward) continue;
        if (inc.to == to) return true;
        if (!seen[inc.to]) {
          seen[inc.to] = true;
          stack.push_back(inc.to);
        }
      }
    }
    return false;
  };
  const std::size_t offset = g.directed.size();
  for (std::size_t i = 0; i < g.undirected.size(); ++i) {
    const auto& e = g.undirected[i];
    if (reaches(e.second, e.first, offset + i) ||
        reaches(e.first, e.second, offset + i)) {
      return true;
    }
  }
  return false;
}

bool underlying_is_forest(const DependencyGraph& g) {
  std::vector<std::size_t> parent(g.node_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto join = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  };
  for (const Arc& a : g.directed) {
    if (!join(a.from, a.to)) return false;
  }
  for (const auto& e : g.undirected) {
    if (!join(e.first, e.second)) return false;
  }
  return true;
}

}  // namespace

CycleEnumeration enumerate_semi_directed_cycles(const TcpNet& net,
                                                std::size_t cap,
                                                std::size_t max_steps) {
  return CycleEnumerator(dependency_graph(net), cap, max_steps).run();
}

// ---------------------------------------------------------------------------
// Per-cycle tests

namespace {

constexpr int kFree = -1;

// The endpoint a ci-arc at position `pos` must favour for the cycle to be
// directed forward (or backward).
VarIndex along_winner(const SemiDirectedCycle& c, std::size_t pos,
                      bool forward) {
  return forward ? c.vertices[pos] : c.vertices[(pos + 1) % c.vertices.size()];
}

std::vector<bool> directions(const SemiDirectedCycle& c) {
  return c.has_direction() ? std::vector<bool>{true}
                           : std::vector<bool>{true, false};
}

// Values of the arc's selector in row `row` agree with every fixed entry.
bool row_consistent(const TcpNet& net, const CiArc& arc, std::size_t row,
                    const std::vector<int>& fixed) {
  const auto values = decode_assignment(net, arc.selector, row);
  for (std::size_t i = 0; i < arc.selector.size(); ++i) {
    const int f = fixed[arc.selector[i]];
    if (f != kFree && static_cast<ValueIndex>(f) != values[i]) return false;
  }
  return true;
}

// First row consistent with `fixed` that makes `winner` more important.
std::optional<std::size_t> row_along(const TcpNet& net, const CiArc& arc,
                                     VarIndex winner,
                                     const std::vector<int>& fixed) {
  for (std::size_t r = 0; r < arc.rows.size(); ++r) {
    if (arc.winner(r) == winner && row_consistent(net, arc, r, fixed)) return r;
  }
  return std::nullopt;
}

std::vector<VarIndex> intersection(const std::vector<VarIndex>& a,
                                   const std::vector<VarIndex>& b) {
  std::vector<VarIndex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::vector<VarIndex> shared_selectors(const TcpNet& net,
                                       const SemiDirectedCycle& c) {
  const auto pos = c.ci_positions();
  std::set<VarIndex> shared;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      for (VarIndex v : intersection(net.ci_arcs()[*c.ci[pos[i]]].selector,
                                     net.ci_arcs()[*c.ci[pos[j]]].selector)) {
        shared.insert(v);
      }
    }
  }
  return {shared.begin(), shared.end()};
}

// Exact decision given the shared variables: the remaining selector
// variables of distinct arcs are disjoint, so each arc picks its own row.
CycleResult exact_over(const TcpNet& net, const SemiDirectedCycle& c,
                       const std::vector<VarIndex>& shared) {
  const auto pos = c.ci_positions();
  std::vector<int> fixed(net.size(), kFree);
  const std::size_t count = assignment_count(net, shared);
  for (std::size_t code = 0; code < count; ++code) {
    const auto u = decode_assignment(net, shared, code);
    for (std::size_t i = 0; i < shared.size(); ++i) {
      fixed[shared[i]] = static_cast<int>(u[i]);
    }
    for (bool forward : directions(c)) {
      Outcome w(net.size(), 0);
      bool all = true;
      for (std::size_t p : pos) {
        const CiArc& arc = net.ci_arcs()[*c.ci[p]];
        const auto row = row_along(net, arc, along_winner(c, p, forward), fixed);
        if (!row) {
          all = false;
          break;
        }
        const auto values = decode_assignment(net, arc.selector, *row);
        for (std::size_t k = 0; k < arc.selector.size(); ++k) {
          w[arc.selector[k]] = values[k];
        }
      }
      if (all) return {CycleStatus::ConditionallyDirected, std::move(w)};
    }
  }
  return {CycleStatus::Acyclic, std::nullopt};
}

}  // namespace

CycleResult cycle_check_necessary(const TcpNet& net,
                                  const SemiDirectedCycle& cycle) {
  if (!shared_selectors(net, cycle).empty()) return {};
  auto result = exact_over(net, cycle, {});
  if (result.status == CycleStatus::ConditionallyDirected) return result;
  return {};
}

CycleResult cycle_check_sufficient(const TcpNet& net,
                                   const SemiDirectedCycle& cycle,
                                   std::size_t budget) {
  const auto pos = cycle.ci_positions();
  const auto dirs = directions(cycle);
  std::vector<int> fixed(net.size(), kFree);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      const CiArc& a = net.ci_arcs()[*cycle.ci[pos[i]]];
      const CiArc& b = net.ci_arcs()[*cycle.ci[pos[j]]];
      const auto common = intersection(a.selector, b.selector);
      const std::size_t count = assignment_count(net, common);
      if (count > budget) continue;
      bool pair_blocks = true;
      for (std::size_t code = 0; code < count && pair_blocks; ++code) {
        const auto u = decode_assignment(net, common, code);
        std::fill(fixed.begin(), fixed.end(), kFree);
        for (std::size_t k = 0; k < common.size(); ++k) {
          fixed[common[k]] = static_cast<int>(u[k]);
        }
        for (bool forward : dirs) {
          const bool a_blocks =
              !row_along(net, a, along_winner(cycle, pos[i], forward), fixed);
          const bool b_blocks =
              !row_along(net, b, along_winner(cycle, pos[j], forward), fixed);
          if (!a_blocks && !b_blocks) pair_blocks = false;
        }
      }
      if (pair_blocks) return {CycleStatus::Acyclic, std::nullopt};
    }
  }
  return {};
}

CycleResult cycle_check_shared_exact(const TcpNet& net,
                                     const SemiDirectedCycle& cycle,
                                     std::size_t budget) {
  const auto shared = shared_selectors(net, cycle);
  const std::size_t count = assignment_count(net, shared);
  if (count > budget) {
    throw Error(ErrorCode::BudgetExceeded,
                std::to_string(count) + " shared selector assignments exceed " +
                    "the budget of " + std::to_string(budget));
  }
  return exact_over(net, cycle, shared);
}

CycleCnf encode_cycle(const TcpNet& net, const SemiDirectedCycle& cycle,
                      bool forward) {
  if (!forward && cycle.has_direction()) {
    throw Error(ErrorCode::InvalidArgument,
                "a cycle with directed edges has a fixed direction");
  }
  CycleCnf out;
  std::set<VarIndex> vars;
  const auto pos = cycle.ci_positions();
  for (std::size_t p : pos) {
    for (VarIndex s : net.ci_arcs()[*cycle.ci[p]].selector) {
      if (net.domain_size(s) != 2) {
        throw Error(ErrorCode::NonBinarySelector,
                    "selector variable '" + net.variable(s).name +
                        "' is not binary");
      }
      vars.insert(s);
    }
  }
  out.selector_vars.assign(vars.begin(), vars.end());
  out.formula.variable_count = vars.size();
  auto sat_var = [&](VarIndex v) {
    return static_cast<int>(std::lower_bound(out.selector_vars.begin(),
                                             out.selector_vars.end(), v) -
                            out.selector_vars.begin()) +
           1;
  };
  for (std::size_t p : pos) {
    const CiArc& arc = net.ci_arcs()[*cycle.ci[p]];
    const VarIndex winner = along_winner(cycle, p, forward);
    // Each row that does not favour `winner` (including absent rows) is
    // excluded by one clause over the arc's selector.
    for (std::size_t r = 0; r < arc.rows.size(); ++r) {
      if (arc.winner(r) == winner) continue;
      const auto values = decode_assignment(net, arc.selector, r);
      std::vector<int> clause;
      for (std::size_t k = 0; k < arc.selector.size(); ++k) {
        const int lit = sat_var(arc.selector[k]);
        clause.push_back(values[k] == 1 ? -lit : lit);
      }
      out.formula.clauses.push_back(std::move(clause));
    }
  }
  return out;
}

CycleResult cycle_check_sat(const TcpNet& net, const SemiDirectedCycle& cycle) {
  for (bool forward : directions(cycle)) {
    const CycleCnf cnf = encode_cycle(net, cycle, forward);
    const auto model = sat_solve(cnf.formula);
    if (!model) continue;
    Outcome w(net.size(), 0);
    for (std::size_t i = 0; i < cnf.selector_vars.size(); ++i) {
      w[cnf.selector_vars[i]] = (*model)[i] ? 1 : 0;
    }
    return {CycleStatus::ConditionallyDirected, std::move(w)};
  }
  return {CycleStatus::Acyclic, std::nullopt};
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

AcyclicityVerdict exhaustive(const TcpNet& net, std::size_t budget) {
  AcyclicityVerdict verdict;
  const auto selectors = net.selector_variables();
  const std::size_t count = assignment_count(net, selectors);
  if (count > budget) {
    verdict.note = std::to_string(count) +
                   " selector assignments exceed the fallback budget of " +
                   std::to_string(budget);
    return verdict;
  }
  for (std::size_t code = 0; code < count; ++code) {
    Outcome w(net.size(), 0);
    const auto values = decode_assignment(net, selectors, code);
    for (std::size_t i = 0; i < selectors.size(); ++i) w[selectors[i]] = values[i];
    const WDirectedGraph g = w_directed_graph(net, w);
    if (auto cycle = find_directed_cycle(g.node_count, g.edges)) {
      verdict.status = AcyclicityStatus::ConditionallyCyclic;
      verdict.decided_by = DecidedBy::Exhaustive;
      verdict.witness = std::move(w);
      verdict.cycle = std::move(*cycle);
      return verdict;
    }
  }
  verdict.status = AcyclicityStatus::ConditionallyAcyclic;
  verdict.decided_by = DecidedBy::Exhaustive;
  return verdict;
}

bool binary_selectors(const TcpNet& net, const SemiDirectedCycle& c) {
  for (std::size_t p : c.ci_positions()) {
    for (VarIndex s : net.ci_arcs()[*c.ci[p]].selector) {
      if (net.domain_size(s) != 2) return false;
    }
  }
  return true;
}

struct CycleDecision {
  CycleResult result;
  DecidedBy stage = DecidedBy::None;
};

CycleDecision decide_cycle(const TcpNet& net, const SemiDirectedCycle& c,
                           const AcyclicityPolicy& policy) {
  if (policy.method != CheckMethod::Sat) {
    auto necessary = cycle_check_necessary(net, c);
    if (necessary.status == CycleStatus::ConditionallyDirected) {
      return {std::move(necessary), DecidedBy::Necessary};
    }
    auto sufficient = cycle_check_sufficient(net, c, policy.shared_budget);
    if (sufficient.status == CycleStatus::Acyclic) {
      return {std::move(sufficient), DecidedBy::Sufficient};
    }
  }
  if (policy.method != CheckMethod::Cycles && binary_selectors(net, c)) {
    return {cycle_check_sat(net, c), DecidedBy::Sat};
  }
  try {
    return {cycle_check_shared_exact(net, c, policy.shared_budget),
            DecidedBy::SharedExact};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    return {};
  }
}

// Orders the cycle's vertices so that the witness graph contains them as a
// directed cycle.
std::vector<VarIndex> directed_vertices(const TcpNet& net,
                                        const SemiDirectedCycle& c,
                                        const Outcome& w) {
  if (witness_holds(net, w, c.vertices)) return c.vertices;
  const auto back = reversed(c).vertices;
  if (witness_holds(net, w, back)) return back;
  throw std::logic_error("cycle witness does not re-verify");
}

}  // namespace

AcyclicityVerdict check_conditional_acyclicity(const TcpNet& net,
                                               const AcyclicityPolicy& policy) {
  if (policy.method == CheckMethod::Brute) {
    return exhaustive(net, policy.fallback_budget);
  }
  AcyclicityVerdict verdict;
  const DependencyGraph dg = dependency_graph(net);

  if (auto cycle = find_directed_cycle(dg.node_count, dg.directed)) {
    verdict.status = AcyclicityStatus::ConditionallyCyclic;
    verdict.decided_by = DecidedBy::DirectedCycle;
    verdict.witness = Outcome(net.size(), 0);
    verdict.cycle = std::move(*cycle);
    return verdict;
  }
  if (underlying_is_forest(dg)) {
    verdict.status = AcyclicityStatus::ConditionallyAcyclic;
    verdict.decided_by = DecidedBy::Forest;
    return verdict;
  }
  if (!has_semi_directed_cycle(dg)) {
    verdict.status = AcyclicityStatus::ConditionallyAcyclic;
    verdict.decided_by = DecidedBy::NoSemiDirectedCycle;
    return verdict;
  }

  const auto found =
      enumerate_semi_directed_cycles(net, policy.cycle_cap, policy.search_steps);
  if (!found.cap_exceeded) {
    DecidedBy strongest = DecidedBy::Necessary;
    bool undecided = false;
    for (const auto& cycle : found.cycles) {
      ++verdict.cycles_examined;
      auto [result, stage] = decide_cycle(net, cycle, policy);
      if (result.status == CycleStatus::ConditionallyDirected) {
        verdict.status = AcyclicityStatus::ConditionallyCyclic;
        verdict.decided_by = stage;
        verdict.cycle = directed_vertices(net, cycle, *result.witness);
        verdict.witness = std::move(result.witness);
        return verdict;
      }
      if (result.status == CycleStatus::Inconclusive) {
        undecided = true;
      } else {
        strongest = std::max(strongest, stage);
      }
    }
    if (!undecided) {
      verdict.status = AcyclicityStatus::ConditionallyAcyclic;
      verdict.decided_by = strongest;
      return verdict;
    }
  }

  AcyclicityVerdict fallback = exhaustive(net, policy.fallback_budget);
  fallback.cycles_examined = verdict.cycles_examined;
  const std::string why = found.cap_exceeded
                              ? "cycle enumeration cap exceeded"
                              : "a cycle exceeded the shared-selector budget";
  fallback.note = fallback.note.empty() ? why : why + "; " + fallback.note;
  return fallback;
}

}  // namespace tcpnet
