#pragma once

// Test-only reference implementations. They work from the name-based
// NetSpec and the plain definitions, sharing no code with the engine beyond
// the data types, so that agreement between the two is meaningful.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tcpnet/constraints.hpp"
#include "tcpnet/model.hpp"
#include "tcpnet/sat.hpp"

namespace ref {

using Values = std::vector<int>;

struct Row {
  std::map<int, int> when;
  std::vector<std::vector<bool>> better;  // better[a][b]: a preferred to b
};

struct CiArc {
  int a;
  int b;
  std::vector<int> selector;
  std::vector<std::pair<std::map<int, int>, int>> rows;  // (when, winner)
};

struct Net {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> domains;
  std::set<std::pair<int, int>> cp;
  std::set<std::pair<int, int>> imp;
  std::vector<CiArc> ci;
  std::vector<std::vector<Row>> cpt;
};

inline int find_index(const std::vector<std::string>& list,
                      const std::string& name) {
  return static_cast<int>(std::find(list.begin(), list.end(), name) -
                          list.begin());
}

inline Net from_spec(const tcpnet::NetSpec& spec) {
  Net net;
  for (const auto& v : spec.variables) {
    net.names.push_back(v.name);
    net.domains.push_back(v.domain);
  }
  auto var = [&](const std::string& n) { return find_index(net.names, n); };
  for (const auto& [a, b] : spec.cp_arcs) net.cp.insert({var(a), var(b)});
  for (const auto& [a, b] : spec.i_arcs) net.imp.insert({var(a), var(b)});
  auto when_of = [&](const tcpnet::PartialAssignment& when) {
    std::map<int, int> out;
    for (const auto& [n, value] : when) {
      const int v = var(n);
      out[v] = find_index(net.domains[v], value);
    }
    return out;
  };
  for (const auto& arc : spec.ci_arcs) {
    CiArc c{var(arc.first), var(arc.second), {}, {}};
    for (const auto& s : arc.selector) c.selector.push_back(var(s));
    for (const auto& row : arc.rows) {
      c.rows.emplace_back(when_of(row.when), var(row.more_important));
    }
    net.ci.push_back(std::move(c));
  }
  net.cpt.resize(net.names.size());
  for (const auto& table : spec.cpts) {
    const int v = var(table.variable);
    const std::size_t d = net.domains[v].size();
    for (const auto& row : table.rows) {
      Row r{when_of(row.when), std::vector<std::vector<bool>>(
                                   d, std::vector<bool>(d, false))};
      for (const auto& [a, b] : row.pairs) {
        r.better[find_index(net.domains[v], a)][find_index(net.domains[v], b)] =
            true;
      }
      // Transitive closure by repeated relaxation.
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j)
            if (r.better[i][k] && r.better[k][j]) r.better[i][j] = true;
      net.cpt[v].push_back(std::move(r));
    }
  }
  return net;
}

inline bool matches(const std::map<int, int>& when, const Values& o) {
  return std::all_of(when.begin(), when.end(),
                     [&](const auto& kv) { return o[kv.first] == kv.second; });
}

/// a preferred to b for variable v in the context of o; missing rows prefer
/// nothing.
inline bool prefers(const Net& net, int v, const Values& o, int a, int b) {
  for (const Row& row : net.cpt[v]) {
    if (matches(row.when, o)) return row.better[a][b];
  }
  return false;
}

inline bool more_important(const Net& net, int x, int y, const Values& o) {
  if (net.imp.count({x, y})) return true;
  for (const auto& arc : net.ci) {
    if (!((arc.a == x && arc.b == y) || (arc.a == y && arc.b == x))) continue;
    for (const auto& [when, winner] : arc.rows) {
      if (matches(when, o)) return winner == x;
    }
  }
  return false;
}

/// One improving flip from `from` to `to`.
inline bool is_flip(const Net& net, const Values& from, const Values& to) {
  std::vector<int> diff;
  for (std::size_t v = 0; v < from.size(); ++v) {
    if (from[v] != to[v]) diff.push_back(static_cast<int>(v));
  }
  if (diff.size() == 1) {
    const int x = diff[0];
    return prefers(net, x, from, to[x], from[x]);
  }
  if (diff.size() != 2) return false;
  for (int k = 0; k < 2; ++k) {
    const int x = diff[k], y = diff[1 - k];
    if (net.cp.count({x, y}) || net.cp.count({y, x})) continue;
    if (more_important(net, x, y, from) &&
        prefers(net, x, from, to[x], from[x]) &&
        prefers(net, y, from, from[y], to[y])) {
      return true;
    }
  }
  return false;
}

inline std::vector<Values> all_outcomes(const Net& net) {
  std::vector<Values> out{Values{}};
  for (const auto& domain : net.domains) {
    std::vector<Values> next;
    for (const Values& prefix : out) {
      for (std::size_t x = 0; x < domain.size(); ++x) {
        Values v = prefix;
        v.push_back(static_cast<int>(x));
        next.push_back(std::move(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Flip graph plus its transitive closure over all_outcomes() positions
/// (first variable most significant).
struct Closure {
  std::vector<std::size_t> radix;
  std::vector<Values> outcomes;
  std::vector<std::vector<std::size_t>> succ;
  std::vector<std::vector<bool>> reach;  // paths of length >= 1

  std::size_t index(const Values& o) const {
    std::size_t code = 0;
    for (std::size_t v = 0; v < o.size(); ++v) code = code * radix[v] + o[v];
    return code;
  }
  bool entails(const Values& better, const Values& worse) const {
    return reach[index(worse)][index(better)];
  }
  bool edge(const Values& from, const Values& to) const {
    const auto& s = succ[index(from)];
    return std::find(s.begin(), s.end(), index(to)) != s.end();
  }
  bool cyclic() const {
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (reach[i][i]) return true;
    }
    return false;
  }
  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& s : succ) n += s.size();
    return n;
  }
};

inline Closure closure(const Net& net) {
  Closure c;
  for (const auto& d : net.domains) c.radix.push_back(d.size());
  c.outcomes = all_outcomes(net);
  const std::size_t n = c.outcomes.size();
  const std::size_t vars = net.names.size();
  c.succ.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Values& o = c.outcomes[i];
    // Candidates differ from o in one or two variables.
    for (std::size_t x = 0; x < vars; ++x) {
      for (int xv = 0; xv < static_cast<int>(c.radix[x]); ++xv) {
        if (xv == o[x]) continue;
        Values t = o;
        t[x] = xv;
        if (is_flip(net, o, t)) c.succ[i].push_back(c.index(t));
        for (std::size_t y = x + 1; y < vars; ++y) {
          for (int yv = 0; yv < static_cast<int>(c.radix[y]); ++yv) {
            if (yv == o[y]) continue;
            Values u = t;
            u[y] = yv;
            if (is_flip(net, o, u)) c.succ[i].push_back(c.index(u));
          }
        }
      }
    }
  }
  c.reach.assign(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : c.succ[u]) {
        if (!c.reach[s][v]) {
          c.reach[s][v] = true;
          stack.push_back(v);
        }
      }
    }
  }
  return c;
}

/// Some selector assignment under which the graph with cp-arcs, i-arcs,
/// selector -> endpoint edges and the oriented ci-arcs has a directed cycle.
inline std::optional<std::map<int, int>> cyclic_selector_assignment(
    const Net& net) {
  std::set<int> selectors;
  for (const auto& arc : net.ci)
    selectors.insert(arc.selector.begin(), arc.selector.end());
  const std::vector<int> sel(selectors.begin(), selectors.end());
  std::vector<int> w(sel.size(), 0);
  const std::size_t n = net.names.size();
  while (true) {
    Values o(n, 0);
    for (std::size_t i = 0; i < sel.size(); ++i) o[sel[i]] = w[i];
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : net.cp) adj[a][b] = true;
    for (const auto& [a, b] : net.imp) adj[a][b] = true;
    for (const auto& arc : net.ci) {
      for (int s : arc.selector) adj[s][arc.a] = adj[s][arc.b] = true;
      for (const auto& [when, winner] : arc.rows) {
        if (!matches(when, o)) continue;
        const int loser = winner == arc.a ? arc.b : arc.a;
        adj[winner][loser] = true;
        break;
      }
    }
    // Cycle test by repeatedly removing sinks.
    std::vector<bool> gone(n, false);
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t u = 0; u < n; ++u) {
        if (gone[u]) continue;
        bool sink = true;
        for (std::size_t v = 0; v < n; ++v) sink = sink && (gone[v] || !adj[u][v]);
        if (sink) gone[u] = progress = true;
      }
    }
    if (std::find(gone.begin(), gone.end(), false) != gone.end()) {
      std::map<int, int> out;
      for (std::size_t i = 0; i < sel.size(); ++i) out[sel[i]] = w[i];
      return out;
    }
    std::size_t i = 0;
    while (i < sel.size() && ++w[i] == static_cast<int>(net.domains[sel[i]].size())) {
      w[i++] = 0;
    }
    if (i == sel.size()) return std::nullopt;
  }
}

inline bool satisfiable_brute(const tcpnet::CnfFormula& f) {
  const std::size_t n = f.variable_count;
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    std::vector<bool> model(n);
    for (std::size_t v = 0; v < n; ++v) model[v] = (bits >> v) & 1;
    if (f.evaluate(model)) return true;
  }
  return false;
}

namespace detail {

inline int literal_value(const std::vector<int>& value, int lit) {
  const int v = value[std::abs(lit) - 1];
  return v < 0 ? -1 : (lit > 0 ? v : 1 - v);
}

inline bool search(const tcpnet::CnfFormula& f, std::vector<int>& value) {
  const std::vector<int> saved = value;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& clause : f.clauses) {
      int open = 0, last = 0;
      bool sat = false;
      for (int lit : clause) {
        const int lv = literal_value(value, lit);
        if (lv == 1) sat = true;
        if (lv == -1) ++open, last = lit;
      }
      if (sat) continue;
      if (open == 0) {
        value = saved;
        return false;
      }
      if (open == 1) {
        value[std::abs(last) - 1] = last > 0 ? 1 : 0;
        changed = true;
      }
    }
  }
  const auto it = std::find(value.begin(), value.end(), -1);
  if (it == value.end()) return true;
  const std::size_t v = it - value.begin();
  for (int choice : {1, 0}) {
    value[v] = choice;
    if (search(f, value)) return true;
    value[v] = -1;
  }
  value = saved;
  return false;
}

}  // namespace detail

/// Backtracking with unit propagation; complete for any width.
inline bool satisfiable_search(const tcpnet::CnfFormula& f) {
  std::vector<int> value(f.variable_count, -1);
  return detail::search(f, value);
}

}  // namespace ref

namespace gen {

struct NetOptions {
  std::size_t variables = 5;
  std::size_t max_domain = 2;  // domains drawn from [2, max_domain]
  double cp_density = 0.35;
  double i_density = 0.15;
  double ci_density = 0.15;
  std::size_t max_selector = 2;
  double row_drop = 0.1;         // chance a CIT row is left out
  double cpt_row_drop = 0.05;    // chance a CPT row is left out
  double empty_order = 0.05;     // chance a CPT row prefers nothing
  bool forward_only = false;     // i-arcs and cp-arcs from lower to higher index
  bool selectors_first = false;  // selectors drawn from indices below both endpoints
};

inline std::string value_name(std::size_t x) { return "v" + std::to_string(x); }

/// A random net that validates. Arcs go between distinct variables; at most
/// one of cp, i, ci per unordered pair so validation never rejects it.
inline tcpnet::NetSpec random_net(std::mt19937& rng, const NetOptions& opt) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  tcpnet::NetSpec spec;
  const std::size_t n = opt.variables;
  for (std::size_t v = 0; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> size(2, opt.max_domain);
    tcpnet::VariableSpec var{"X" + std::to_string(v), {}};
    const std::size_t d = size(rng);
    for (std::size_t x = 0; x < d; ++x) var.domain.push_back(value_name(x));
    spec.variables.push_back(std::move(var));
  }
  auto name = [&](std::size_t v) { return spec.variables[v].name; };
  std::vector<std::vector<std::size_t>> parents(n);
  std::vector<std::pair<std::size_t, std::size_t>> ci_pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double r = coin(rng);
      const bool flip = !opt.forward_only && coin(rng) < 0.3;
      const std::size_t from = flip ? b : a, to = flip ? a : b;
      if (r < opt.cp_density) {
        spec.cp_arcs.emplace_back(name(from), name(to));
        parents[to].push_back(from);
      } else if (r < opt.cp_density + opt.i_density) {
        spec.i_arcs.emplace_back(name(from), name(to));
      } else if (r < opt.cp_density + opt.i_density + opt.ci_density) {
        ci_pairs.emplace_back(a, b);
      }
    }
  }
  for (const auto& [a, b] : ci_pairs) {
    std::vector<std::size_t> pool;
    for (std::size_t v = 0; v < n; ++v) {
      if (v != a && v != b && (!opt.selectors_first || v < a)) pool.push_back(v);
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    std::uniform_int_distribution<std::size_t> count(
        1, std::max<std::size_t>(1, std::min(opt.max_selector, pool.size())));
    if (pool.empty()) continue;
    pool.resize(count(rng));
    std::sort(pool.begin(), pool.end());
    tcpnet::CiArcSpec arc{name(a), name(b), {}, {}};
    for (std::size_t s : pool) arc.selector.push_back(name(s));
    // Enumerate selector assignments.
    std::vector<std::size_t> w(pool.size(), 0);
    while (true) {
      if (coin(rng) >= opt.row_drop) {
        tcpnet::CitRowSpec row;
        for (std::size_t i = 0; i < pool.size(); ++i) {
          row.when[name(pool[i])] = value_name(w[i]);
        }
        row.more_important = coin(rng) < 0.5 ? name(a) : name(b);
        arc.rows.push_back(std::move(row));
      }
      std::size_t i = 0;
      while (i < w.size() &&
             ++w[i] == spec.variables[pool[i]].domain.size()) {
        w[i++] = 0;
      }
      if (i == w.size()) break;
    }
    spec.ci_arcs.push_back(std::move(arc));
  }
  for (std::size_t v = 0; v < n; ++v) {
    tcpnet::CptSpec cpt{name(v), {}};
    std::vector<std::size_t> w(parents[v].size(), 0);
    const std::size_t d = spec.variables[v].domain.size();
    while (true) {
      if (coin(rng) >= opt.cpt_row_drop) {
        tcpnet::OrderRowSpec row;
        for (std::size_t i = 0; i < w.size(); ++i) {
          row.when[name(parents[v][i])] = value_name(w[i]);
        }
        if (coin(rng) >= opt.empty_order) {
          std::vector<std::size_t> perm(d);
          for (std::size_t x = 0; x < d; ++x) perm[x] = x;
          std::shuffle(perm.begin(), perm.end(), rng);
          for (std::size_t k = 0; k + 1 < d; ++k) {
            // Occasionally leave a gap so the order is only partial.
            if (d > 2 && coin(rng) < 0.2) continue;
            row.pairs.emplace_back(value_name(perm[k]), value_name(perm[k + 1]));
          }
        }
        cpt.rows.push_back(std::move(row));
      }
      std::size_t i = 0;
      while (i < w.size() &&
             ++w[i] == spec.variables[parents[v][i]].domain.size()) {
        w[i++] = 0;
      }
      if (i == w.size()) break;
    }
    spec.cpts.push_back(std::move(cpt));
  }
  return spec;
}

/// Retries until the reference oracle finds no cyclic selector assignment.
inline tcpnet::NetSpec random_acyclic_net(std::mt19937& rng, NetOptions opt) {
  while (true) {
    auto spec = random_net(rng, opt);
    if (!ref::cyclic_selector_assignment(ref::from_spec(spec))) return spec;
  }
}

inline std::vector<tcpnet::HardConstraint> random_constraints(
    std::mt19937& rng, const tcpnet::TcpNet& net, std::size_t count,
    std::size_t max_arity = 2, double keep = 0.6) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<tcpnet::HardConstraint> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<tcpnet::VarIndex> vars(net.size());
    for (std::size_t v = 0; v < vars.size(); ++v) vars[v] = v;
    std::shuffle(vars.begin(), vars.end(), rng);
    std::uniform_int_distribution<std::size_t> arity(
        1, std::min(max_arity, vars.size()));
    vars.resize(arity(rng));
    tcpnet::HardConstraint c{vars, {}};
    const std::size_t tuples = tcpnet::assignment_count(net, vars);
    for (std::size_t code = 0; code < tuples; ++code) {
      if (coin(rng) < keep) {
        c.allowed.push_back(tcpnet::decode_assignment(net, vars, code));
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline tcpnet::CnfFormula random_cnf(std::mt19937& rng, std::size_t vars,
                                     std::size_t clauses, std::size_t width) {
  tcpnet::CnfFormula f{vars, {}};
  std::uniform_int_distribution<int> var(1, static_cast<int>(vars));
  std::uniform_int_distribution<std::size_t> len(1, width);
  std::bernoulli_distribution sign(0.5);
  for (std::size_t c = 0; c < clauses; ++c) {
    std::vector<int> clause;
    const std::size_t k = len(rng);
    for (std::size_t i = 0; i < k; ++i) {
      clause.push_back(sign(rng) ? var(rng) : -var(rng));
    }
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

}  // namespace gen
