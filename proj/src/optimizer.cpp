#include "tcpnet/optimizer.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <numeric>
#include <queue>
#include <string>

namespace tcpnet {

VarIndex find_root(const TcpNet& net) {
  if (net.size() == 0) {
    throw Error(ErrorCode::InvalidArgument, "empty net has no root");
  }
  std::vector<bool> blocked(net.size(), false);
  for (const Arc& a : net.cp_arcs()) blocked[a.to] = true;
  for (const Arc& a : net.i_arcs()) blocked[a.to] = true;
  for (const CiArc& c : net.ci_arcs()) {
    blocked[c.first] = true;
    blocked[c.second] = true;
  }
  const auto it = std::find(blocked.begin(), blocked.end(), false);
  if (it == blocked.end()) {
    throw Error(ErrorCode::NoRoot, "every variable has an incoming arc");
  }
  return static_cast<VarIndex>(it - blocked.begin());
}

Outcome forward_sweep(const TcpNet& net, const PartialAssignment& x) {
  const std::size_t n = net.size();
  Outcome o(n, 0);
  std::vector<bool> bound(n, false);
  for (const auto& [name, label] : x) {
    const VarIndex v = net.index_of(name);
    o[v] = net.value_index(v, label);
    bound[v] = true;
  }
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<VarIndex>> children(n);
  for (const Arc& a : net.cp_arcs()) {
    ++indegree[a.to];
    children[a.from].push_back(a.to);
  }
  std::priority_queue<VarIndex, std::vector<VarIndex>, std::greater<>> ready;
  for (VarIndex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const VarIndex v = ready.top();
    ready.pop();
    ++visited;
    if (!bound[v]) o[v] = net.row(v, o).best();
    for (VarIndex c : children[v]) {
      if (--indegree[c] == 0) ready.push(c);
    }
  }
  if (visited != n) {
    throw Error(ErrorCode::NoRoot, "cp-arcs form a cycle");
  }
  return o;
}

std::vector<std::vector<VarIndex>> components(
    const TcpNet& net, const ConstraintStore& store,
    std::span<const VarIndex> store_index) {
  const std::size_t n = net.size();
  std::vector<VarIndex> parent(n);
  std::iota(parent.begin(), parent.end(), VarIndex{0});
  auto root = [&](VarIndex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto join = [&](VarIndex a, VarIndex b) {
    a = root(a);
    b = root(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  std::vector<bool> live(n);
  std::vector<std::optional<VarIndex>> local(store.size());
  for (VarIndex v = 0; v < n; ++v) {
    live[v] = !store.committed(store_index[v]);
    local[store_index[v]] = v;
  }
  auto link = [&](VarIndex a, VarIndex b) {
    if (live[a] && live[b]) join(a, b);
  };
  for (const Arc& a : net.cp_arcs()) link(a.from, a.to);
  for (const Arc& a : net.i_arcs()) link(a.from, a.to);
  for (const CiArc& c : net.ci_arcs()) {
    link(c.first, c.second);
    for (VarIndex s : c.selector) link(s, c.first);
  }
  for (std::size_t k = 0; k < store.constraints().size(); ++k) {
    if (!store.active(k)) continue;
    std::optional<VarIndex> anchor;
    for (VarIndex sv : store.constraints()[k].scope) {
      const auto v = local[sv];
      if (!v || !live[*v]) continue;
      if (anchor) {
        join(*anchor, *v);
      } else {
        anchor = v;
      }
    }
  }

  std::vector<std::vector<VarIndex>> out;
  std::vector<std::optional<std::size_t>> slot(n);
  for (VarIndex v = 0; v < n; ++v) {
    if (!live[v]) continue;
    const VarIndex r = root(v);
    if (!slot[r]) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[*slot[r]].push_back(v);
  }
  return out;
}

std::vector<std::vector<VarIndex>> components(const TcpNet& net,
                                              const ConstraintStore& store) {
  std::vector<VarIndex> identity(net.size());
  std::iota(identity.begin(), identity.end(), VarIndex{0});
  return components(net, store, identity);
}

namespace {

// A subnet of the original net; orig[v] is v's index in the original.
struct Frame {
  TcpNet net;
  std::vector<VarIndex> orig;
};

std::vector<VarIndex> original_indices(const TcpNet& orig, const TcpNet& net) {
  std::vector<VarIndex> out;
  for (const Variable& var : net.variables()) {
    out.push_back(orig.index_of(var.name));
  }
  return out;
}

class Searcher {
 public:
  Searcher(const TcpNet& orig, SearchMode mode, const SearchOptions& options)
      : orig_(orig), mode_(mode), options_(options) {}

  SearchStats stats;

  // Solutions over f's variables, written into original-sized outcomes whose
  // other entries are unspecified.
  std::vector<Outcome> run(const Frame& f, const ConstraintStore& store,
                           const Outcome& context) {
    ++stats.calls;
    const VarIndex x = find_root(f.net);
    const VarIndex ox = f.orig[x];
    // The root's parents are all bound in the context.
    const PreferenceOrder& row = orig_.row(ox, context);
    const std::vector<ValueIndex> values = row.linear_extension();

    std::vector<Outcome> results;
    std::vector<std::pair<ValueIndex, ConstraintStore>> earlier;
    for (const ValueIndex xi : values) {
      if (!store.contains(ox, xi)) {
        ++stats.inconsistent;
        continue;
      }
      auto strong = strengthen(store, ox, xi);
      if (!strong) {
        ++stats.inconsistent;
        continue;
      }
      ConstraintStore ci = std::move(strong->store);
      if (options_.prune && covered(ci, earlier, row, ox, xi)) {
        ++stats.pruned;
        earlier.emplace_back(xi, std::move(ci));
        continue;
      }

      // K': every variable of this net that the store now fixes.
      Outcome assigned = context;
      PartialAssignment k_names;
      for (VarIndex v = 0; v < f.net.size(); ++v) {
        if (const auto value = ci.fixed_value(f.orig[v])) {
          assigned[f.orig[v]] = *value;
          k_names[f.net.variable(v).name] = f.net.variable(v).domain[*value];
        }
      }
      const TcpNet reduced = reduce(f.net, k_names);
      const std::vector<VarIndex> reduced_orig =
          original_indices(orig_, reduced);

      std::vector<std::vector<Outcome>> parts;
      std::vector<std::vector<VarIndex>> part_vars;
      bool feasible = true;
      for (const auto& comp : components(reduced, ci, reduced_orig)) {
        Frame sub{subnet(reduced, comp), {}};
        sub.orig = original_indices(orig_, sub.net);
        auto r = run(sub, ci, assigned);
        if (r.empty()) {
          feasible = false;
          break;
        }
        part_vars.push_back(sub.orig);
        parts.push_back(std::move(r));
      }
      if (feasible) {
        combine(f, assigned, parts, part_vars, results);
        if (mode_ == SearchMode::First && !results.empty()) return results;
      }
      earlier.emplace_back(xi, std::move(ci));
    }
    return results;
  }

 private:
  // Every solution under xi, switched to some strictly better xj, stays a
  // solution; that switch is an improving flip of the root.
  bool covered(const ConstraintStore& ci,
               const std::vector<std::pair<ValueIndex, ConstraintStore>>& earlier,
               const PreferenceOrder& row, VarIndex ox, ValueIndex xi) const {
    return std::any_of(earlier.begin(), earlier.end(), [&](const auto& e) {
      return row.prefers(e.first, xi) &&
             store_entailed_by(ci, e.second, ox, options_.entailment_budget) ==
                 Entailment::Yes;
    });
  }

  // Cartesian product of the component results, last component fastest,
  // filtered against everything emitted so far in this call.
  void combine(const Frame& f, const Outcome& assigned,
               const std::vector<std::vector<Outcome>>& parts,
               const std::vector<std::vector<VarIndex>>& part_vars,
               std::vector<Outcome>& results) {
    std::vector<std::size_t> pos(parts.size(), 0);
    while (true) {
      Outcome o = assigned;
      for (std::size_t j = 0; j < parts.size(); ++j) {
        for (VarIndex v : part_vars[j]) o[v] = parts[j][pos[j]][v];
      }
      if (admissible(f, o, results)) {
        results.push_back(o);
        if (mode_ == SearchMode::First) return;
      }
      std::size_t j = parts.size();
      while (j > 0) {
        --j;
        if (++pos[j] < parts[j].size()) break;
        pos[j] = 0;
        if (j == 0) return;
      }
      if (parts.empty()) return;
    }
  }

  bool admissible(const Frame& f, const Outcome& o,
                  const std::vector<Outcome>& results) {
    if (mode_ == SearchMode::First) return true;
    const Outcome candidate = local(f, o);
    for (const Outcome& r : results) {
      ++stats.dominance_tests;
      const auto verdict =
          dominates(f.net, local(f, r), candidate, options_.dominance_budget);
      if (verdict.status == DominanceStatus::Unknown) {
        throw Error(ErrorCode::UnknownDominance,
                    "dominance budget of " +
                        std::to_string(options_.dominance_budget) +
                        " expansions exhausted");
      }
      if (verdict.status == DominanceStatus::Dominates) {
        ++stats.rejected;
        return false;
      }
    }
    return true;
  }

  static Outcome local(const Frame& f, const Outcome& o) {
    Outcome out(f.orig.size());
    for (VarIndex v = 0; v < f.orig.size(); ++v) out[v] = o[f.orig[v]];
    return out;
  }

  const TcpNet& orig_;
  SearchMode mode_;
  SearchOptions options_;
};

}  // namespace

SolutionSet search_tcp(const TcpNet& net,
                       const std::vector<HardConstraint>& constraints,
                       SearchMode mode, const SearchOptions& options) {
  SolutionSet out;
  const ConstraintStore store(net, constraints);
  if (!store.consistent()) return out;
  if (net.size() == 0) {
    out.solutions.emplace_back();
    return out;
  }
  Frame top{net, {}};
  top.orig.resize(net.size());
  std::iota(top.orig.begin(), top.orig.end(), VarIndex{0});
  Searcher searcher(net, mode, options);
  out.solutions = searcher.run(top, store, Outcome(net.size(), 0));
  out.stats = searcher.stats;
  return out;
}

namespace {

void construct(const TcpNet& orig, const Frame& f, Outcome& current,
               std::vector<Outcome>& out) {
  if (f.net.size() == 0) {
    out.push_back(current);
    return;
  }
  const VarIndex x = find_root(f.net);
  // A root has no parents left, so its table has a single row.
  const PreferenceOrder& row = f.net.row(x, Outcome(f.net.size(), 0));
  for (const ValueIndex value : row.linear_extension()) {
    current[f.orig[x]] = value;
    Frame next{reduce(f.net, {{f.net.variable(x).name,
                               f.net.variable(x).domain[value]}}),
               {}};
    next.orig = original_indices(orig, next.net);
    construct(orig, next, current, out);
  }
}

}  // namespace

std::vector<Outcome> construct_satisfying_order(const TcpNet& net,
                                                std::size_t cap) {
  if (net.outcome_count() > cap) {
    throw Error(ErrorCode::TooLarge,
                "outcome space exceeds " + std::to_string(cap));
  }
  Frame top{net, {}};
  top.orig.resize(net.size());
  std::iota(top.orig.begin(), top.orig.end(), VarIndex{0});
  std::vector<Outcome> out;
  Outcome current(net.size(), 0);
  construct(net, top, current, out);
  return out;
}

}  // namespace tcpnet
