#include "tcpnet/sat.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "tcpnet/error.hpp"

namespace tcpnet {

std::size_t CnfFormula::width() const {
  std::size_t w = 0;
  for (const auto& c : clauses) w = std::max(w, c.size());
  return w;
}

bool CnfFormula::evaluate(const std::vector<bool>& model) const {
  return std::all_of(clauses.begin(), clauses.end(), [&](const auto& clause) {
    return std::any_of(clause.begin(), clause.end(), [&](int lit) {
      return model[std::abs(lit) - 1] == (lit > 0);
    });
  });
}

void CnfFormula::check() const {
  for (const auto& clause : clauses) {
    for (int lit : clause) {
      if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > variable_count) {
        throw Error(ErrorCode::InvalidArgument,
                    "literal " + std::to_string(lit) + " out of range");
      }
    }
  }
}

namespace {

// Literal node numbering: variable v (0-based) true -> 2v, false -> 2v + 1.
std::size_t node_of(int lit) {
  const std::size_t v = static_cast<std::size_t>(std::abs(lit)) - 1;
  return lit > 0 ? 2 * v : 2 * v + 1;
}

// Iterative Tarjan; returns the component id of every node.
std::vector<std::size_t> tarjan_scc(
    const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;
  std::size_t counter = 0, components = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next == 0) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (next < adj[v].size()) {
        const std::size_t w = adj[v][next++];
        if (index[w] == kUnvisited) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
      const std::size_t finished = v;
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return comp;
}

}  // namespace

std::optional<std::vector<bool>> two_sat_solve(const CnfFormula& f) {
  f.check();
  if (f.width() > 2) {
    throw Error(ErrorCode::WidthExceeded,
                "clause of width " + std::to_string(f.width()) +
                    " passed to the 2-SAT solver");
  }
  const std::size_t n = f.variable_count;
  std::vector<std::vector<std::size_t>> adj(2 * n);
  for (const auto& clause : f.clauses) {
    if (clause.empty()) return std::nullopt;
    const int a = clause[0];
    const int b = clause.size() == 2 ? clause[1] : clause[0];
    // (a or b) gives -a -> b and -b -> a.
    adj[node_of(-a)].push_back(node_of(b));
    adj[node_of(-b)].push_back(node_of(a));
  }
  const auto comp = tarjan_scc(adj);
  for (std::size_t v = 0; v < n; ++v) {
    if (comp[2 * v] == comp[2 * v + 1]) return std::nullopt;
  }

  // Greedy smallest model: fixing a literal and closing under implication
  // either succeeds or forces its complement, which then cannot fail.
  std::vector<int> value(n, -1);
  std::vector<std::size_t> trail;
  auto propagate = [&](std::size_t start) {
    trail.clear();
    std::vector<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t node = queue.back();
      queue.pop_back();
      const std::size_t v = node / 2;
      const int want = node % 2 == 0 ? 1 : 0;
      if (value[v] == want) continue;
      if (value[v] != -1) return false;
      value[v] = want;
      trail.push_back(v);
      for (std::size_t next : adj[node]) queue.push_back(next);
    }
    return true;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (value[v] != -1) continue;
    if (!propagate(2 * v + 1)) {
      for (std::size_t u : trail) value[u] = -1;
      propagate(2 * v);
    }
  }
  std::vector<bool> model(n);
  for (std::size_t v = 0; v < n; ++v) model[v] = value[v] == 1;
  return model;
}

namespace {

class Dpll {
 public:
  explicit Dpll(const CnfFormula& f)
      : f_(f), value_(f.variable_count, -1) {}

  std::optional<std::vector<bool>> run() {
    for (const auto& clause : f_.clauses) {
      if (clause.empty()) return std::nullopt;
    }
    std::vector<std::size_t> trail;
    if (!unit_propagate(trail) || !search()) return std::nullopt;
    std::vector<bool> model(value_.size());
    for (std::size_t v = 0; v < value_.size(); ++v) model[v] = value_[v] == 1;
    return model;
  }

 private:
  bool lit_true(int lit) const {
    const int v = value_[std::abs(lit) - 1];
    return v != -1 && (v == 1) == (lit > 0);
  }
  bool lit_false(int lit) const {
    const int v = value_[std::abs(lit) - 1];
    return v != -1 && (v == 1) != (lit > 0);
  }

  // Assigns forced literals until fixpoint; false on conflict. Every
  // assignment made is appended to trail.
  bool unit_propagate(std::vector<std::size_t>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : f_.clauses) {
        int unassigned = 0;
        int last = 0;
        bool sat = false;
        for (int lit : clause) {
          if (lit_true(lit)) {
            sat = true;
            break;
          }
          if (!lit_false(lit)) {
            ++unassigned;
            last = lit;
          }
        }
        if (sat) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          value_[std::abs(last) - 1] = last > 0 ? 1 : 0;
          trail.push_back(std::abs(last) - 1);
          changed = true;
        }
      }
    }
    return true;
  }

  bool search() {
    const auto it = std::find(value_.begin(), value_.end(), -1);
    if (it == value_.end()) return true;
    const std::size_t v = it - value_.begin();
    for (int choice : {0, 1}) {
      std::vector<std::size_t> trail{v};
      value_[v] = choice;
      if (unit_propagate(trail) && search()) return true;
      for (std::size_t u : trail) value_[u] = -1;
    }
    return false;
  }

  const CnfFormula& f_;
  std::vector<int> value_;
};

}  // namespace

std::optional<std::vector<bool>> dpll_solve(const CnfFormula& f) {
  f.check();
  return Dpll(f).run();
}

std::optional<std::vector<bool>> sat_solve(const CnfFormula& f) {
  return f.width() <= 2 ? two_sat_solve(f) : dpll_solve(f);
}

}  // namespace tcpnet
