#include "tcpnet/semantics.hpp"

#include <algorithm>

namespace tcpnet {

namespace {

// Appends the I-flips in which x improves and y worsens.
void importance_flips(const TcpNet& net, const Outcome& o, VarIndex x,
                      VarIndex y, std::optional<std::size_t> ci_arc,
                      std::vector<Flip>& out) {
  if (net.is_parent(x, y) || net.is_parent(y, x)) return;
  const auto& row_x = net.row(x, o);
  const auto& row_y = net.row(y, o);
  for (ValueIndex xv = 0; xv < net.domain_size(x); ++xv) {
    if (!row_x.prefers(xv, o[x])) continue;
    for (ValueIndex yv = 0; yv < net.domain_size(y); ++yv) {
      if (!row_y.prefers(o[y], yv)) continue;
      Flip flip{o, {FlipKind::Importance, x, y, ci_arc}};
      flip.outcome[x] = xv;
      flip.outcome[y] = yv;
      out.push_back(std::move(flip));
    }
  }
}

}  // namespace

std::vector<Flip> improving_successors(const TcpNet& net, const Outcome& o) {
  check_outcome(net, o);
  std::vector<Flip> out;
  for (VarIndex x = 0; x < net.size(); ++x) {
    const auto& row = net.row(x, o);
    for (ValueIndex v = 0; v < net.domain_size(x); ++v) {
      if (!row.prefers(v, o[x])) continue;
      Flip flip{o, {FlipKind::Cp, x, x, std::nullopt}};
      flip.outcome[x] = v;
      out.push_back(std::move(flip));
    }
  }
  for (const Arc& arc : net.i_arcs()) {
    importance_flips(net, o, arc.from, arc.to, std::nullopt, out);
  }
  for (std::size_t i = 0; i < net.ci_arcs().size(); ++i) {
    const CiArc& arc = net.ci_arcs()[i];
    const auto winner = arc.winner(assignment_code(net, arc.selector, o));
    if (!winner) continue;
    const VarIndex loser = *winner == arc.first ? arc.second : arc.first;
    importance_flips(net, o, *winner, loser, i, out);
  }
  return out;
}

bool FlipGraph::has_edge(std::size_t from, std::size_t to) const {
  const auto succ = successors(from);
  return std::find(succ.begin(), succ.end(), to) != succ.end();
}

std::vector<bool> FlipGraph::reachable_from(std::size_t from) const {
  std::vector<bool> seen(node_count(), false);
  std::vector<std::size_t> stack(successors(from).begin(),
                                 successors(from).end());
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    if (seen[node]) continue;
    seen[node] = true;
    for (std::size_t next : successors(node)) {
      if (!seen[next]) stack.push_back(next);
    }
  }
  return seen;
}

std::optional<std::vector<std::size_t>> FlipGraph::find_cycle() const {
  enum : std::uint8_t { White, Grey, Black };
  const std::size_t n = node_count();
  std::vector<std::uint8_t> colour(n, White);
  std::vector<std::size_t> parent(n, 0);
  // Frames are (node, index of next successor to try).
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (colour[root] != White) continue;
    stack.emplace_back(root, 0);
    colour[root] = Grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      const auto succ = successors(node);
      if (next == succ.size()) {
        colour[node] = Black;
        stack.pop_back();
        continue;
      }
      const std::size_t to = succ[next++];
      if (colour[to] == Grey) {
        std::vector<std::size_t> cycle{node};
        for (std::size_t v = node; v != to;) {
          v = parent[v];
          cycle.push_back(v);
        }
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (colour[to] == White) {
        parent[to] = node;
        colour[to] = Grey;
        stack.emplace_back(to, 0);
      }
    }
  }
  return std::nullopt;
}

FlipGraph build_flip_graph(const TcpNet& net, std::size_t cap) {
  const std::size_t n = net.outcome_count();
  if (n > cap) {
    throw Error(ErrorCode::TooLarge, "outcome space of " + std::to_string(n) +
                                         " exceeds flip-graph cap " +
                                         std::to_string(cap));
  }
  FlipGraph graph;
  graph.offsets_.reserve(n + 1);
  for (std::size_t code = 0; code < n; ++code) {
    for (auto& flip : improving_successors(net, decode_outcome(net, code))) {
      graph.targets_.push_back(outcome_code(net, flip.outcome));
      graph.labels_.push_back(flip.label);
    }
    graph.offsets_.push_back(graph.targets_.size());
  }
  return graph;
}

bool oracle_entails(const TcpNet& net, const Outcome& better,
                    const Outcome& worse, std::size_t cap) {
  check_outcome(net, better);
  check_outcome(net, worse);
  const FlipGraph graph = build_flip_graph(net, cap);
  return graph.reachable_from(outcome_code(net, worse))[outcome_code(net, better)];
}

bool flip_graph_has_cycle(const TcpNet& net, std::size_t cap) {
  return build_flip_graph(net, cap).find_cycle().has_value();
}

std::optional<std::vector<Outcome>> find_flip_cycle(const TcpNet& net,
                                                    std::size_t cap) {
  auto cycle = build_flip_graph(net, cap).find_cycle();
  if (!cycle) return std::nullopt;
  std::vector<Outcome> out;
  for (std::size_t code : *cycle) out.push_back(decode_outcome(net, code));
  return out;
}

namespace {

// Importance clause for "x more important than y" at the worse outcome o:
// every outcome that improves x strictly, with y arbitrary and everything
// else fixed, must rank above o.
bool importance_clause_holds(const TcpNet& net,
                             const std::vector<std::size_t>& rank,
                             const Outcome& o, VarIndex x, VarIndex y) {
  const bool y_is_parent = net.is_parent(y, x);
  const std::size_t worse_rank = rank[outcome_code(net, o)];
  Outcome better = o;
  for (ValueIndex yv = 0; yv < net.domain_size(y); ++yv) {
    better[y] = yv;
    for (ValueIndex xv = 0; xv < net.domain_size(x); ++xv) {
      better[x] = o[x];
      if (!net.row(x, o).prefers(xv, o[x])) continue;
      // A parent y fixes x's row, so x must improve under both y values.
      if (y_is_parent && !net.row(x, better).prefers(xv, o[x])) continue;
      better[x] = xv;
      if (rank[outcome_code(net, better)] >= worse_rank) return false;
    }
  }
  return true;
}

}  // namespace

bool order_satisfies(const TcpNet& net, const std::vector<Outcome>& order) {
  const std::size_t n = net.outcome_count();
  if (order.size() != n) {
    throw Error(ErrorCode::IncompleteOrder,
                "order ranks " + std::to_string(order.size()) + " of " +
                    std::to_string(n) + " outcomes");
  }
  std::vector<std::size_t> rank(n, n);
  for (std::size_t i = 0; i < order.size(); ++i) {
    check_outcome(net, order[i]);
    const std::size_t code = outcome_code(net, order[i]);
    if (rank[code] != n) {
      throw Error(ErrorCode::IncompleteOrder,
                  "outcome " + format_outcome(net, order[i]) +
                      " ranked twice");
    }
    rank[code] = i;
  }

  for (std::size_t code = 0; code < n; ++code) {
    const Outcome o = decode_outcome(net, code);
    for (VarIndex x = 0; x < net.size(); ++x) {
      const auto& row = net.row(x, o);
      Outcome better = o;
      for (ValueIndex v = 0; v < net.domain_size(x); ++v) {
        if (!row.prefers(v, o[x])) continue;
        better[x] = v;
        if (rank[outcome_code(net, better)] >= rank[code]) return false;
      }
    }
    for (const Arc& arc : net.i_arcs()) {
      if (!importance_clause_holds(net, rank, o, arc.from, arc.to)) {
        return false;
      }
    }
    for (const CiArc& arc : net.ci_arcs()) {
      const auto winner = arc.winner(assignment_code(net, arc.selector, o));
      if (!winner) continue;
      const VarIndex loser = *winner == arc.first ? arc.second : arc.first;
      if (!importance_clause_holds(net, rank, o, *winner, loser)) return false;
    }
  }
  return true;
}

std::vector<Outcome> oracle_nondominated(const TcpNet& net,
                                         const std::vector<Outcome>& feasible,
                                         std::size_t cap) {
  if (feasible.empty()) return {};
  const FlipGraph graph = build_flip_graph(net, cap);
  std::vector<bool> in_set(graph.node_count(), false);
  for (const auto& o : feasible) {
    check_outcome(net, o);
    in_set[outcome_code(net, o)] = true;
  }
  std::vector<Outcome> out;
  for (const auto& o : feasible) {
    const std::size_t code = outcome_code(net, o);
    const auto reach = graph.reachable_from(code);
    bool dominated = false;
    for (std::size_t other = 0; other < reach.size() && !dominated; ++other) {
      dominated = reach[other] && in_set[other] && other != code;
    }
    // A cycle back to o itself also means o is strictly below itself.
    if (!dominated && !reach[code]) out.push_back(o);
  }
  return out;
}

}  // namespace tcpnet
