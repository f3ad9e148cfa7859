#include "tcpnet/gadgets.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

namespace tcpnet {

namespace {

std::string x_name(int lit) { return "x" + std::to_string(std::abs(lit)); }
std::string c_name(std::size_t j) { return "C" + std::to_string(j + 1); }

void add_binary(NetSpec& spec, const std::string& name) {
  spec.variables.push_back({name, {"f", "t"}});
}

void multi_cycle(const std::vector<std::vector<int>>& clauses, NetSpec& spec) {
  const std::size_t n = clauses.size();
  for (std::size_t j = 0; j < n; ++j) add_binary(spec, c_name(j));
  for (std::size_t j = 0; j < n; ++j) {
    const std::string next = c_name((j + 1) % n);
    for (std::size_t k = 0; k < clauses[j].size(); ++k) {
      const int lit = clauses[j][k];
      const std::string l =
          "L" + std::to_string(j + 1) + "_" + std::to_string(k + 1);
      add_binary(spec, l);
      spec.i_arcs.emplace_back(c_name(j), l);
      const std::string x = x_name(lit);
      // The literal variable wins exactly when the literal is true.
      spec.ci_arcs.push_back(
          {l, next, {x},
           {{{{x, "t"}}, lit > 0 ? l : next}, {{{x, "f"}}, lit > 0 ? next : l}}});
    }
  }
}

void one_cycle(const std::vector<std::vector<int>>& clauses, NetSpec& spec) {
  const std::size_t n = clauses.size();
  for (std::size_t j = 0; j < n; ++j) add_binary(spec, c_name(j));
  add_binary(spec, "C");
  spec.i_arcs.emplace_back("C", c_name(0));
  for (std::size_t j = 0; j < n; ++j) {
    const std::string here = c_name(j);
    const std::string next = j + 1 < n ? c_name(j + 1) : "C";
    std::set<int> vars;
    for (int lit : clauses[j]) vars.insert(std::abs(lit));
    CiArcSpec arc{here, next, {}, {}};
    for (int v : vars) arc.selector.push_back(x_name(v));
    const std::vector<int> order(vars.begin(), vars.end());
    for (std::size_t code = 0; code < (std::size_t{1} << order.size()); ++code) {
      CitRowSpec row;
      auto value = [&](int v) {
        const std::size_t i =
            std::find(order.begin(), order.end(), v) - order.begin();
        return ((code >> (order.size() - 1 - i)) & 1) != 0;
      };
      bool satisfied = false;
      for (int lit : clauses[j]) satisfied |= value(std::abs(lit)) == (lit > 0);
      for (int v : order) row.when[x_name(v)] = value(v) ? "t" : "f";
      // The clause variable loses importance exactly when its clause fails.
      row.more_important = satisfied ? here : next;
      arc.rows.push_back(std::move(row));
    }
    spec.ci_arcs.push_back(std::move(arc));
  }
}

}  // namespace

TcpNet gadget_from_cnf(const CnfFormula& f, GadgetVariant variant) {
  f.check();
  if (f.clauses.empty()) {
    throw Error(ErrorCode::InvalidArgument, "formula has no clauses");
  }
  for (const auto& clause : f.clauses) {
    if (clause.empty()) {
      throw Error(ErrorCode::InvalidArgument, "formula has an empty clause");
    }
    if (clause.size() > 3) {
      throw Error(ErrorCode::WidthExceeded,
                  "clause of width " + std::to_string(clause.size()) +
                      " in a gadget formula");
    }
  }
  auto clauses = f.clauses;
  if (clauses.size() == 1) clauses.push_back(clauses.front());

  NetSpec spec;
  for (std::size_t v = 1; v <= f.variable_count; ++v) {
    add_binary(spec, "x" + std::to_string(v));
  }
  if (variant == GadgetVariant::MultiCycle) {
    multi_cycle(clauses, spec);
  } else {
    one_cycle(clauses, spec);
  }
  return TcpNet::build(spec);
}

}  // namespace tcpnet
