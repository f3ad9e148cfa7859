#include <algorithm>
#include <set>

#include "tcpnet/model.hpp"

namespace tcpnet {

namespace {

// Row bindings minus the variables bound by k; nullopt if the row disagrees
// with k.
std::optional<PartialAssignment> restrict_row(const PartialAssignment& when,
                                              const PartialAssignment& k) {
  PartialAssignment out;
  for (const auto& [name, value] : when) {
    auto it = k.find(name);
    if (it == k.end()) {
      out.emplace(name, value);
    } else if (it->second != value) {
      return std::nullopt;
    }
  }
  return out;
}

}  // namespace

TcpNet reduce(const TcpNet& net, const PartialAssignment& k) {
  for (const auto& [name, value] : k) {
    net.value_index(net.index_of(name), value);
  }
  if (k.empty()) return net;

  const NetSpec full = net.to_spec();
  auto bound = [&](const std::string& name) { return k.count(name) > 0; };

  NetSpec out;
  for (const auto& v : full.variables) {
    if (!bound(v.name)) out.variables.push_back(v);
  }
  for (const auto& arc : full.cp_arcs) {
    if (!bound(arc.first) && !bound(arc.second)) out.cp_arcs.push_back(arc);
  }
  for (const auto& arc : full.i_arcs) {
    if (!bound(arc.first) && !bound(arc.second)) out.i_arcs.push_back(arc);
  }

  for (const auto& arc : full.ci_arcs) {
    if (bound(arc.first) || bound(arc.second)) continue;
    CiArcSpec reduced{arc.first, arc.second, {}, {}};
    std::vector<VarIndex> remaining;
    for (const auto& s : arc.selector) {
      if (!bound(s)) {
        reduced.selector.push_back(s);
        remaining.push_back(net.index_of(s));
      }
    }
    for (const auto& row : arc.rows) {
      if (auto when = restrict_row(row.when, k)) {
        reduced.rows.push_back({std::move(*when), row.more_important});
      }
    }
    if (reduced.rows.empty()) continue;

    const bool uniform = std::all_of(
        reduced.rows.begin(), reduced.rows.end(), [&](const CitRowSpec& r) {
          return r.more_important == reduced.rows.front().more_important;
        });
    const bool complete =
        reduced.rows.size() == assignment_count(net, remaining);
    if (uniform && complete) {
      const std::string& winner = reduced.rows.front().more_important;
      const std::string& loser = winner == arc.first ? arc.second : arc.first;
      out.i_arcs.emplace_back(winner, loser);
    } else {
      out.ci_arcs.push_back(std::move(reduced));
    }
  }

  for (const auto& cpt : full.cpts) {
    if (bound(cpt.variable)) continue;
    CptSpec reduced{cpt.variable, {}};
    for (const auto& row : cpt.rows) {
      if (auto when = restrict_row(row.when, k)) {
        reduced.rows.push_back({std::move(*when), row.pairs});
      }
    }
    out.cpts.push_back(std::move(reduced));
  }
  return TcpNet::build(out);
}

TcpNet subnet(const TcpNet& net, std::span<const VarIndex> keep) {
  std::set<std::string> names;
  for (VarIndex v : keep) names.insert(net.variable(v).name);
  auto kept = [&](const std::string& name) { return names.count(name) > 0; };

  const NetSpec full = net.to_spec();
  NetSpec out;
  for (const auto& v : full.variables) {
    if (kept(v.name)) out.variables.push_back(v);
  }
  auto crossing = [&](const std::string& a, const std::string& b) {
    return kept(a) != kept(b);
  };
  for (const auto& arc : full.cp_arcs) {
    if (crossing(arc.first, arc.second)) {
      throw Error(ErrorCode::InvalidArgument,
                  "cp-arc " + arc.first + "->" + arc.second +
                      " leaves the kept variable set");
    }
    if (kept(arc.first)) out.cp_arcs.push_back(arc);
  }
  for (const auto& arc : full.i_arcs) {
    if (crossing(arc.first, arc.second)) {
      throw Error(ErrorCode::InvalidArgument,
                  "i-arc " + arc.first + "|>" + arc.second +
                      " leaves the kept variable set");
    }
    if (kept(arc.first)) out.i_arcs.push_back(arc);
  }
  for (const auto& arc : full.ci_arcs) {
    bool any = kept(arc.first) || kept(arc.second);
    bool all = kept(arc.first) && kept(arc.second);
    for (const auto& s : arc.selector) {
      any = any || kept(s);
      all = all && kept(s);
    }
    if (any && !all) {
      throw Error(ErrorCode::InvalidArgument,
                  "ci-arc " + arc.first + "--" + arc.second +
                      " leaves the kept variable set");
    }
    if (all) out.ci_arcs.push_back(arc);
  }
  for (const auto& cpt : full.cpts) {
    if (kept(cpt.variable)) out.cpts.push_back(cpt);
  }
  return TcpNet::build(out);
}

}  // namespace tcpnet
