#include "tcpnet/constraints.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace tcpnet {

bool HardConstraint::allows(const Outcome& o) const {
  return std::any_of(allowed.begin(), allowed.end(), [&](const auto& tuple) {
    for (std::size_t i = 0; i < scope.size(); ++i) {
      if (o[scope[i]] != tuple[i]) return false;
    }
    return true;
  });
}

HardConstraint compile_constraint(const TcpNet& net,
                                  const ConstraintSpec& spec) {
  HardConstraint c;
  std::set<VarIndex> seen;
  for (const auto& name : spec.scope) {
    const VarIndex v = net.index_of(name);
    if (!seen.insert(v).second) {
      throw Error(ErrorCode::InvalidArgument,
                  "variable '" + name + "' repeated in constraint scope");
    }
    c.scope.push_back(v);
  }
  for (const auto& tuple : spec.allowed) {
    if (tuple.size() != c.scope.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "allowed tuple of arity " + std::to_string(tuple.size()) +
                      " for a scope of " + std::to_string(c.scope.size()));
    }
    std::vector<ValueIndex> values;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      values.push_back(net.value_index(c.scope[i], tuple[i]));
    }
    c.allowed.push_back(std::move(values));
  }
  return c;
}

std::vector<HardConstraint> compile_constraints(
    const TcpNet& net, const std::vector<ConstraintSpec>& specs) {
  std::vector<HardConstraint> out;
  for (const auto& spec : specs) out.push_back(compile_constraint(net, spec));
  return out;
}

bool satisfies_all(const std::vector<HardConstraint>& constraints,
                   const Outcome& o) {
  return std::all_of(constraints.begin(), constraints.end(),
                     [&](const HardConstraint& c) { return c.allows(o); });
}

// ---------------------------------------------------------------------------
// Store

ConstraintStore::ConstraintStore(const TcpNet& net,
                                 std::vector<HardConstraint> constraints)
    : constraints_(std::make_shared<const std::vector<HardConstraint>>(
          std::move(constraints))),
      committed_(net.size(), false) {
  for (VarIndex v = 0; v < net.size(); ++v) {
    domains_.emplace_back(net.domain_size(v), 1);
  }
  consistent_ = propagate();
}

std::size_t ConstraintStore::domain_count(VarIndex v) const {
  return static_cast<std::size_t>(
      std::count(domains_[v].begin(), domains_[v].end(), 1));
}

std::vector<ValueIndex> ConstraintStore::domain(VarIndex v) const {
  std::vector<ValueIndex> out;
  for (ValueIndex x = 0; x < domains_[v].size(); ++x) {
    if (domains_[v][x]) out.push_back(x);
  }
  return out;
}

std::optional<ValueIndex> ConstraintStore::fixed_value(VarIndex v) const {
  if (domain_count(v) != 1) return std::nullopt;
  return domain(v).front();
}

namespace {

bool tuple_in_domains(const HardConstraint& c,
                      const std::vector<ValueIndex>& tuple,
                      const std::vector<std::vector<char>>& domains) {
  for (std::size_t i = 0; i < c.scope.size(); ++i) {
    if (!domains[c.scope[i]][tuple[i]]) return false;
  }
  return true;
}

}  // namespace

bool ConstraintStore::active(std::size_t index) const {
  const HardConstraint& c = (*constraints_)[index];
  std::size_t product = 1;
  for (VarIndex v : c.scope) product *= domain_count(v);
  std::size_t allowed_inside = 0;
  std::set<std::vector<ValueIndex>> distinct;
  for (const auto& tuple : c.allowed) {
    if (tuple_in_domains(c, tuple, domains_) && distinct.insert(tuple).second) {
      ++allowed_inside;
    }
  }
  return allowed_inside != product;
}

bool ConstraintStore::propagate() {
  const auto& constraints = *constraints_;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const HardConstraint& c : constraints) {
      std::vector<std::vector<char>> supported;
      for (VarIndex v : c.scope) {
        supported.emplace_back(domains_[v].size(), 0);
      }
      bool any = false;
      for (const auto& tuple : c.allowed) {
        if (!tuple_in_domains(c, tuple, domains_)) continue;
        any = true;
        for (std::size_t i = 0; i < c.scope.size(); ++i) {
          supported[i][tuple[i]] = 1;
        }
      }
      if (!any) return false;
      for (std::size_t i = 0; i < c.scope.size(); ++i) {
        auto& dom = domains_[c.scope[i]];
        for (ValueIndex x = 0; x < dom.size(); ++x) {
          if (dom[x] && !supported[i][x]) {
            dom[x] = 0;
            changed = true;
          }
        }
      }
    }
  }
  return std::all_of(domains_.begin(), domains_.end(), [](const auto& dom) {
    return std::find(dom.begin(), dom.end(), 1) != dom.end();
  });
}

bool ConstraintStore::restrict_to(VarIndex x, ValueIndex value) {
  if (!consistent_ || !domains_[x][value]) {
    consistent_ = false;
    return false;
  }
  std::fill(domains_[x].begin(), domains_[x].end(), 0);
  domains_[x][value] = 1;
  consistent_ = propagate();
  return consistent_;
}

std::vector<std::pair<VarIndex, ValueIndex>>
ConstraintStore::commit_singletons() {
  std::vector<std::pair<VarIndex, ValueIndex>> out;
  for (VarIndex v = 0; v < domains_.size(); ++v) {
    if (committed_[v]) continue;
    if (auto value = fixed_value(v)) {
      committed_[v] = true;
      out.emplace_back(v, *value);
    }
  }
  return out;
}

std::size_t ConstraintStore::search_space() const {
  std::size_t n = 1;
  for (VarIndex v = 0; v < domains_.size(); ++v) {
    const std::size_t d = domain_count(v);
    if (d != 0 && n > std::numeric_limits<std::size_t>::max() / d) {
      return std::numeric_limits<std::size_t>::max();
    }
    n *= d;
  }
  return n;
}

std::vector<Outcome> ConstraintStore::solutions(std::size_t budget) const {
  if (search_space() > budget) {
    throw Error(ErrorCode::BudgetExceeded,
                "store search space exceeds " + std::to_string(budget));
  }
  std::vector<Outcome> out;
  if (!consistent_) return out;
  std::vector<std::vector<ValueIndex>> doms;
  for (VarIndex v = 0; v < domains_.size(); ++v) doms.push_back(domain(v));
  std::vector<std::size_t> pos(doms.size(), 0);
  Outcome o(doms.size());
  while (true) {
    for (VarIndex v = 0; v < doms.size(); ++v) o[v] = doms[v][pos[v]];
    if (satisfies_all(*constraints_, o)) out.push_back(o);
    std::size_t v = doms.size();
    while (v > 0) {
      --v;
      if (++pos[v] < doms[v].size()) break;
      pos[v] = 0;
      if (v == 0) return out;
    }
    if (doms.empty()) return out;
  }
}

std::optional<Strengthened> strengthen(const ConstraintStore& store, VarIndex x,
                                       ValueIndex value) {
  Strengthened out{store, {}};
  if (!out.store.restrict_to(x, value)) return std::nullopt;
  out.induced = out.store.commit_singletons();
  // x leads, even when it was committed before.
  std::erase_if(out.induced, [&](const auto& p) { return p.first == x; });
  out.induced.insert(out.induced.begin(), {x, value});
  return out;
}

const char* to_string(Entailment e) {
  switch (e) {
    case Entailment::Yes: return "Yes";
    case Entailment::No: return "No";
    case Entailment::Undecided: return "Undecided";
  }
  return "?";
}

Entailment store_entailed_by(const ConstraintStore& ci,
                             const ConstraintStore& cj,
                             std::optional<VarIndex> projected_out,
                             std::size_t budget) {
  if (!ci.consistent()) return Entailment::Yes;
  auto image = [&](Outcome o) {
    if (projected_out) o[*projected_out] = *cj.fixed_value(*projected_out);
    return o;
  };
  auto in_cj = [&](const Outcome& o) {
    for (VarIndex v = 0; v < o.size(); ++v) {
      if (!cj.contains(v, o[v])) return false;
    }
    return satisfies_all(cj.constraints(), o);
  };
  if (projected_out && !cj.fixed_value(*projected_out)) {
    throw Error(ErrorCode::InvalidArgument,
                "projected variable is not fixed in the reference store");
  }
  if (ci.search_space() <= budget) {
    for (const Outcome& o : ci.solutions(budget)) {
      if (!in_cj(image(o))) return Entailment::No;
    }
    return Entailment::Yes;
  }

  // Conservative: every value ci allows stays allowed in cj, and every
  // allowed tuple ci can use still is allowed after the switch.
  for (VarIndex v = 0; v < ci.size(); ++v) {
    if (projected_out && v == *projected_out) continue;
    for (ValueIndex x : ci.domain(v)) {
      if (!cj.contains(v, x)) return Entailment::Undecided;
    }
  }
  if (projected_out) {
    const VarIndex x = *projected_out;
    const ValueIndex target = *cj.fixed_value(x);
    for (const HardConstraint& c : ci.constraints()) {
      const auto it = std::find(c.scope.begin(), c.scope.end(), x);
      if (it == c.scope.end()) continue;
      const std::size_t at = it - c.scope.begin();
      for (const auto& tuple : c.allowed) {
        bool usable = true;
        for (std::size_t i = 0; i < c.scope.size() && usable; ++i) {
          usable = ci.contains(c.scope[i], tuple[i]);
        }
        if (!usable) continue;
        auto moved = tuple;
        moved[at] = target;
        if (std::find(c.allowed.begin(), c.allowed.end(), moved) ==
            c.allowed.end()) {
          return Entailment::Undecided;
        }
      }
    }
  }
  return Entailment::Yes;
}

}  // namespace tcpnet
