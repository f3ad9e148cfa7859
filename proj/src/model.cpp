#include "tcpnet/model.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>

namespace tcpnet {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::UnknownValue: return "UnknownValue";
    case ErrorCode::IncompleteOutcome: return "IncompleteOutcome";
    case ErrorCode::IncompleteOrder: return "IncompleteOrder";
    case ErrorCode::IncompleteSelectorAssignment:
      return "IncompleteSelectorAssignment";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::WidthExceeded: return "WidthExceeded";
    case ErrorCode::NonBinarySelector: return "NonBinarySelector";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::UnknownDominance: return "UnknownDominance";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
  }
  return "?";
}

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const ValidationIssue& i) { return i.code == code; });
}

namespace {

std::string first_error_message(const ValidationReport& report) {
  for (const auto& issue : report.issues) {
    if (issue.severity == Severity::Error) {
      return issue.location + ": " + issue.message + " [" + issue.code + "]";
    }
  }
  return "invalid net";
}

}  // namespace

ValidationFailed::ValidationFailed(ValidationReport report)
    : Error(ErrorCode::ValidationFailed, first_error_message(report)),
      report_(std::move(report)) {}

// ---------------------------------------------------------------------------
// PreferenceOrder

PreferenceOrder::PreferenceOrder(std::size_t domain_size)
    : size_(domain_size), rel_(domain_size * domain_size, 0) {}

std::optional<PreferenceOrder> PreferenceOrder::from_pairs(
    std::size_t domain_size,
    std::span<const std::pair<ValueIndex, ValueIndex>> pairs) {
  PreferenceOrder order(domain_size);
  for (const auto& [better, worse] : pairs) {
    order.rel_[better * domain_size + worse] = 1;
  }
  // Warshall closure.
  const std::size_t n = domain_size;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!order.rel_[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (order.rel_[k * n + j]) order.rel_[i * n + j] = 1;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (order.rel_[i * n + i]) return std::nullopt;
  }
  return order;
}

bool PreferenceOrder::empty() const {
  return std::none_of(rel_.begin(), rel_.end(), [](auto b) { return b != 0; });
}

std::vector<std::pair<ValueIndex, ValueIndex>> PreferenceOrder::cover_pairs()
    const {
  std::vector<std::pair<ValueIndex, ValueIndex>> out;
  for (ValueIndex a = 0; a < size_; ++a) {
    for (ValueIndex b = 0; b < size_; ++b) {
      if (!prefers(a, b)) continue;
      bool covered = true;
      for (ValueIndex c = 0; c < size_ && covered; ++c) {
        if (prefers(a, c) && prefers(c, b)) covered = false;
      }
      if (covered) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<ValueIndex> PreferenceOrder::linear_extension() const {
  std::vector<ValueIndex> out;
  std::vector<bool> placed(size_, false);
  while (out.size() < size_) {
    for (ValueIndex v = 0; v < size_; ++v) {
      if (placed[v]) continue;
      bool dominated = false;
      for (ValueIndex u = 0; u < size_ && !dominated; ++u) {
        if (!placed[u] && prefers(u, v)) dominated = true;
      }
      if (!dominated) {
        placed[v] = true;
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

ValueIndex PreferenceOrder::best() const {
  for (ValueIndex v = 0; v < size_; ++v) {
    bool dominated = false;
    for (ValueIndex u = 0; u < size_ && !dominated; ++u) {
      if (prefers(u, v)) dominated = true;
    }
    if (!dominated) return v;
  }
  return 0;
}

std::optional<VarIndex> CiArc::winner(std::size_t row) const {
  switch (rows[row]) {
    case Importance::First: return first;
    case Importance::Second: return second;
    case Importance::Unspecified: break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Validation of the name-based description

namespace {

class Validator {
 public:
  explicit Validator(const NetSpec& spec) : spec_(spec) {}

  ValidationReport run() {
    check_variables();
    check_arcs();
    check_ci_arcs();
    check_cpts();
    report_.ok = std::none_of(
        report_.issues.begin(), report_.issues.end(),
        [](const ValidationIssue& i) { return i.severity == Severity::Error; });
    return std::move(report_);
  }

 private:
  void error(std::string code, std::string location, std::string message) {
    report_.issues.push_back({Severity::Error, std::move(code),
                              std::move(location), std::move(message)});
  }
  void warning(std::string code, std::string location, std::string message) {
    report_.issues.push_back({Severity::Warning, std::move(code),
                              std::move(location), std::move(message)});
  }

  const VariableSpec* lookup(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : &spec_.variables[it->second];
  }

  bool has_value(const VariableSpec& var, const std::string& value) const {
    return std::find(var.domain.begin(), var.domain.end(), value) !=
           var.domain.end();
  }

  void check_variables() {
    for (std::size_t i = 0; i < spec_.variables.size(); ++i) {
      const auto& var = spec_.variables[i];
      const std::string loc = "variables[" + std::to_string(i) + "]";
      if (var.name.empty()) error("empty-name", loc, "variable name is empty");
      if (!by_name_.emplace(var.name, i).second) {
        error("duplicate-variable", loc,
              "variable '" + var.name + "' declared twice");
      }
      if (var.domain.size() < 2) {
        error("small-domain", loc,
              "variable '" + var.name + "' needs at least two values");
      }
      std::set<std::string> seen;
      for (const auto& value : var.domain) {
        if (!seen.insert(value).second) {
          error("duplicate-value", loc,
                "value '" + value + "' repeated in domain of '" + var.name +
                    "'");
        }
      }
    }
  }

  // Checks both endpoints exist and differ; returns false on failure.
  bool check_pair(const std::string& kind, std::size_t i, const std::string& a,
                  const std::string& b) {
    const std::string loc = kind + "[" + std::to_string(i) + "]";
    bool good = true;
    for (const auto* name : {&a, &b}) {
      if (!lookup(*name)) {
        error("unknown-variable", loc, "unknown variable '" + *name + "'");
        good = false;
      }
    }
    if (a == b) {
      error("self-loop", loc, "arc from '" + a + "' to itself");
      good = false;
    }
    return good;
  }

  static std::pair<std::string, std::string> unordered(const std::string& a,
                                                       const std::string& b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
  }

  void check_arcs() {
    std::set<std::pair<std::string, std::string>> cp, imp;
    for (std::size_t i = 0; i < spec_.cp_arcs.size(); ++i) {
      const auto& [from, to] = spec_.cp_arcs[i];
      if (!check_pair("cp_arcs", i, from, to)) continue;
      if (!cp.insert({from, to}).second) {
        warning("duplicate-arc", "cp_arcs[" + std::to_string(i) + "]",
                "cp-arc " + from + "->" + to + " listed twice");
      }
      cp_pairs_.insert(unordered(from, to));
    }
    for (std::size_t i = 0; i < spec_.i_arcs.size(); ++i) {
      const auto& [from, to] = spec_.i_arcs[i];
      const std::string loc = "i_arcs[" + std::to_string(i) + "]";
      if (!check_pair("i_arcs", i, from, to)) continue;
      if (!imp.insert({from, to}).second) {
        warning("duplicate-arc", loc,
                "i-arc " + from + "|>" + to + " listed twice");
      }
      if (imp.count({to, from})) {
        error("i-arc-antisymmetry", loc,
              "both " + from + "|>" + to + " and " + to + "|>" + from);
      }
      i_pairs_.insert(unordered(from, to));
    }
  }

  void check_ci_arcs() {
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 0; i < spec_.ci_arcs.size(); ++i) {
      const auto& arc = spec_.ci_arcs[i];
      const std::string loc = "ci_arcs[" + std::to_string(i) + "]";
      if (!check_pair("ci_arcs", i, arc.first, arc.second)) continue;
      const auto key = unordered(arc.first, arc.second);
      if (!seen.insert(key).second) {
        error("duplicate-ci-arc", loc,
              "second ci-arc between '" + arc.first + "' and '" + arc.second +
                  "'");
      }
      if (cp_pairs_.count(key) || i_pairs_.count(key)) {
        error("ci-arc-conflict", loc,
              "'" + arc.first + "' and '" + arc.second +
                  "' are also joined by a cp-arc or i-arc");
      }
      if (arc.selector.empty()) {
        error("empty-selector", loc, "ci-arc selector set is empty");
      }
      std::set<std::string> selector;
      bool selector_ok = true;
      for (const auto& name : arc.selector) {
        if (!lookup(name)) {
          error("unknown-variable", loc,
                "unknown selector variable '" + name + "'");
          selector_ok = false;
        } else if (name == arc.first || name == arc.second) {
          error("selector-contains-endpoint", loc,
                "selector contains endpoint '" + name + "'");
          selector_ok = false;
        }
        if (!selector.insert(name).second) {
          error("duplicate-selector", loc,
                "selector variable '" + name + "' repeated");
        }
      }
      if (!selector_ok) continue;
      std::set<PartialAssignment> rows;
      for (std::size_t r = 0; r < arc.rows.size(); ++r) {
        const auto& row = arc.rows[r];
        const std::string rloc = loc + ".rows[" + std::to_string(r) + "]";
        if (!check_row_binding(row.when, selector, rloc, "selector")) continue;
        if (!rows.insert(row.when).second) {
          error("duplicate-row", rloc, "CIT row listed twice");
        }
        if (row.more_important != arc.first &&
            row.more_important != arc.second) {
          error("bad-importance", rloc,
                "'" + row.more_important + "' is not an endpoint of the arc");
        }
      }
    }
  }

  // The row must bind exactly `vars`, each to a value of its domain.
  bool check_row_binding(const PartialAssignment& when,
                         const std::set<std::string>& vars,
                         const std::string& loc, const char* what) {
    bool good = true;
    for (const auto& [name, value] : when) {
      const auto* var = lookup(name);
      if (!vars.count(name) || !var) {
        error("row-binding", loc,
              "row binds '" + name + "', which is not a " + what + " variable");
        good = false;
        continue;
      }
      if (!has_value(*var, value)) {
        error("unknown-value", loc,
              "value '" + value + "' not in domain of '" + name + "'");
        good = false;
      }
    }
    for (const auto& name : vars) {
      if (!when.count(name)) {
        error("row-binding", loc,
              "row does not bind " + std::string(what) + " variable '" + name +
                  "'");
        good = false;
      }
    }
    return good;
  }

  void check_cpts() {
    std::map<std::string, std::set<std::string>> parents;
    for (const auto& [from, to] : spec_.cp_arcs) {
      if (lookup(from) && lookup(to) && from != to) parents[to].insert(from);
    }
    std::set<std::string> covered;
    for (std::size_t i = 0; i < spec_.cpts.size(); ++i) {
      const auto& cpt = spec_.cpts[i];
      const std::string loc = "cpts[" + std::to_string(i) + "]";
      const auto* var = lookup(cpt.variable);
      if (!var) {
        error("unknown-variable", loc,
              "CPT for unknown variable '" + cpt.variable + "'");
        continue;
      }
      if (!covered.insert(cpt.variable).second) {
        error("duplicate-cpt", loc, "second CPT for '" + cpt.variable + "'");
        continue;
      }
      const auto& pa = parents[cpt.variable];
      std::set<PartialAssignment> rows;
      for (std::size_t r = 0; r < cpt.rows.size(); ++r) {
        const auto& row = cpt.rows[r];
        const std::string rloc = loc + ".rows[" + std::to_string(r) + "]";
        if (!check_row_binding(row.when, pa, rloc, "parent")) continue;
        if (!rows.insert(row.when).second) {
          error("duplicate-row", rloc, "CPT row listed twice");
        }
        check_order(*var, row, rloc);
      }
      std::size_t expected = 1;
      for (const auto& p : pa) {
        const auto* pv = lookup(p);
        expected *= pv ? pv->domain.size() : 1;
      }
      if (rows.size() < expected) {
        warning("missing-cpt-row", loc,
                std::to_string(expected - rows.size()) + " of " +
                    std::to_string(expected) + " rows of CPT(" + cpt.variable +
                    ") missing; treated as empty orders");
      }
    }
    for (const auto& var : spec_.variables) {
      if (!covered.count(var.name) && by_name_.count(var.name)) {
        warning("missing-cpt", "variables." + var.name,
                "no CPT for '" + var.name + "'; all rows treated as empty");
      }
    }
  }

  void check_order(const VariableSpec& var, const OrderRowSpec& row,
                   const std::string& loc) {
    std::vector<std::pair<ValueIndex, ValueIndex>> pairs;
    bool good = true;
    for (const auto& [better, worse] : row.pairs) {
      auto b = std::find(var.domain.begin(), var.domain.end(), better);
      auto w = std::find(var.domain.begin(), var.domain.end(), worse);
      if (b == var.domain.end() || w == var.domain.end()) {
        error("unknown-value", loc,
              "order mentions a value outside the domain of '" + var.name +
                  "'");
        good = false;
        continue;
      }
      pairs.emplace_back(b - var.domain.begin(), w - var.domain.begin());
    }
    if (!good) return;
    if (!PreferenceOrder::from_pairs(var.domain.size(), pairs)) {
      error("cyclic-value-order", loc,
            "cyclic value order for '" + var.name + "'");
    }
  }

  const NetSpec& spec_;
  ValidationReport report_;
  std::unordered_map<std::string, std::size_t> by_name_;
  std::set<std::pair<std::string, std::string>> cp_pairs_;
  std::set<std::pair<std::string, std::string>> i_pairs_;
};

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

}  // namespace

ValidationReport validate_net(const NetSpec& spec) {
  return Validator(spec).run();
}

ValidationReport validate_net(const TcpNet& net) {
  return validate_net(net.to_spec());
}

// ---------------------------------------------------------------------------
// Compilation

TcpNet TcpNet::build(const NetSpec& spec) {
  auto report = validate_net(spec);
  if (!report.ok) throw ValidationFailed(std::move(report));

  TcpNet net;
  for (const auto& v : spec.variables) net.variables_.push_back({v.name, v.domain});

  auto idx = [&](const std::string& name) { return net.index_of(name); };
  auto values_of = [&](const PartialAssignment& when,
                       std::span<const VarIndex> vars) {
    Outcome o(net.size(), 0);
    for (VarIndex v : vars) {
      o[v] = net.value_index(v, when.at(net.variables_[v].name));
    }
    return assignment_code(net, vars, o);
  };

  std::set<Arc> cp, imp;
  for (const auto& [from, to] : spec.cp_arcs) cp.insert({idx(from), idx(to)});
  for (const auto& [from, to] : spec.i_arcs) imp.insert({idx(from), idx(to)});
  net.cp_arcs_.assign(cp.begin(), cp.end());
  net.i_arcs_.assign(imp.begin(), imp.end());

  for (const auto& a : spec.ci_arcs) {
    CiArc arc;
    VarIndex x = idx(a.first), y = idx(a.second);
    arc.first = std::min(x, y);
    arc.second = std::max(x, y);
    for (const auto& s : a.selector) arc.selector.push_back(idx(s));
    std::sort(arc.selector.begin(), arc.selector.end());
    arc.rows.assign(assignment_count(net, arc.selector), Importance::Unspecified);
    for (const auto& row : a.rows) {
      VarIndex winner = idx(row.more_important);
      arc.rows[values_of(row.when, arc.selector)] =
          winner == arc.first ? Importance::First : Importance::Second;
    }
    net.ci_arcs_.push_back(std::move(arc));
  }
  std::sort(net.ci_arcs_.begin(), net.ci_arcs_.end(),
            [](const CiArc& a, const CiArc& b) {
              return std::pair{a.first, a.second} < std::pair{b.first, b.second};
            });

  net.cpts_.resize(net.size());
  for (const Arc& a : net.cp_arcs_) net.cpts_[a.to].parents.push_back(a.from);
  for (VarIndex v = 0; v < net.size(); ++v) {
    auto& table = net.cpts_[v];
    std::sort(table.parents.begin(), table.parents.end());
    const std::size_t rows = assignment_count(net, table.parents);
    table.rows.assign(rows, PreferenceOrder(net.domain_size(v)));
    table.specified.assign(rows, false);
  }
  for (const auto& cpt : spec.cpts) {
    VarIndex v = idx(cpt.variable);
    auto& table = net.cpts_[v];
    for (const auto& row : cpt.rows) {
      std::vector<std::pair<ValueIndex, ValueIndex>> pairs;
      for (const auto& [b, w] : row.pairs) {
        pairs.emplace_back(net.value_index(v, b), net.value_index(v, w));
      }
      const std::size_t code = values_of(row.when, table.parents);
      table.rows[code] = *PreferenceOrder::from_pairs(net.domain_size(v), pairs);
      table.specified[code] = true;
    }
  }
  return net;
}

NetSpec TcpNet::to_spec() const {
  NetSpec spec;
  for (const auto& v : variables_) spec.variables.push_back({v.name, v.domain});
  auto name = [&](VarIndex v) { return variables_[v].name; };
  for (const Arc& a : cp_arcs_) spec.cp_arcs.emplace_back(name(a.from), name(a.to));
  for (const Arc& a : i_arcs_) spec.i_arcs.emplace_back(name(a.from), name(a.to));
  for (const CiArc& arc : ci_arcs_) {
    CiArcSpec out{name(arc.first), name(arc.second), {}, {}};
    for (VarIndex s : arc.selector) out.selector.push_back(name(s));
    for (std::size_t r = 0; r < arc.rows.size(); ++r) {
      auto w = arc.winner(r);
      if (!w) continue;
      CitRowSpec row;
      const auto values = decode_assignment(*this, arc.selector, r);
      for (std::size_t i = 0; i < arc.selector.size(); ++i) {
        row.when[name(arc.selector[i])] =
            variables_[arc.selector[i]].domain[values[i]];
      }
      row.more_important = name(*w);
      out.rows.push_back(std::move(row));
    }
    spec.ci_arcs.push_back(std::move(out));
  }
  for (VarIndex v = 0; v < size(); ++v) {
    const auto& table = cpts_[v];
    CptSpec cpt{name(v), {}};
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      if (!table.specified[r]) continue;
      OrderRowSpec row;
      const auto values = decode_assignment(*this, table.parents, r);
      for (std::size_t i = 0; i < table.parents.size(); ++i) {
        row.when[name(table.parents[i])] =
            variables_[table.parents[i]].domain[values[i]];
      }
      for (const auto& [b, w] : table.rows[r].cover_pairs()) {
        row.pairs.emplace_back(variables_[v].domain[b], variables_[v].domain[w]);
      }
      cpt.rows.push_back(std::move(row));
    }
    spec.cpts.push_back(std::move(cpt));
  }
  return spec;
}

std::optional<VarIndex> TcpNet::find(std::string_view name) const {
  for (VarIndex v = 0; v < variables_.size(); ++v) {
    if (variables_[v].name == name) return v;
  }
  return std::nullopt;
}

VarIndex TcpNet::index_of(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw Error(ErrorCode::UnknownVariable,
              "unknown variable '" + std::string(name) + "'");
}

ValueIndex TcpNet::value_index(VarIndex v, std::string_view label) const {
  const auto& domain = variables_[v].domain;
  auto it = std::find(domain.begin(), domain.end(), label);
  if (it == domain.end()) {
    throw Error(ErrorCode::UnknownValue, "value '" + std::string(label) +
                                             "' not in domain of '" +
                                             variables_[v].name + "'");
  }
  return static_cast<ValueIndex>(it - domain.begin());
}

bool TcpNet::is_parent(VarIndex parent, VarIndex child) const {
  const auto& pa = cpts_[child].parents;
  return std::binary_search(pa.begin(), pa.end(), parent);
}

const PreferenceOrder& TcpNet::row(VarIndex v, const Outcome& o) const {
  const auto& table = cpts_[v];
  return table.rows[assignment_code(*this, table.parents, o)];
}

std::vector<VarIndex> TcpNet::selector_variables() const {
  std::vector<bool> in(size(), false);
  for (const auto& arc : ci_arcs_) {
    for (VarIndex s : arc.selector) in[s] = true;
  }
  std::vector<VarIndex> out;
  for (VarIndex v = 0; v < size(); ++v) {
    if (in[v]) out.push_back(v);
  }
  return out;
}

std::size_t TcpNet::outcome_count() const {
  std::size_t n = 1;
  for (const auto& v : variables_) n = saturating_mul(n, v.domain.size());
  return n;
}

// ---------------------------------------------------------------------------
// Assignment helpers

std::size_t assignment_code(const TcpNet& net, std::span<const VarIndex> vars,
                            const Outcome& o) {
  std::size_t code = 0;
  for (VarIndex v : vars) code = code * net.domain_size(v) + o[v];
  return code;
}

std::vector<ValueIndex> decode_assignment(const TcpNet& net,
                                          std::span<const VarIndex> vars,
                                          std::size_t code) {
  std::vector<ValueIndex> values(vars.size());
  for (std::size_t i = vars.size(); i-- > 0;) {
    const std::size_t d = net.domain_size(vars[i]);
    values[i] = code % d;
    code /= d;
  }
  return values;
}

std::size_t assignment_count(const TcpNet& net,
                             std::span<const VarIndex> vars) {
  std::size_t n = 1;
  for (VarIndex v : vars) n = saturating_mul(n, net.domain_size(v));
  return n;
}

std::size_t outcome_code(const TcpNet& net, const Outcome& o) {
  std::size_t code = 0;
  for (VarIndex v = 0; v < net.size(); ++v) code = code * net.domain_size(v) + o[v];
  return code;
}

Outcome decode_outcome(const TcpNet& net, std::size_t code) {
  Outcome o(net.size());
  for (std::size_t v = net.size(); v-- > 0;) {
    const std::size_t d = net.domain_size(v);
    o[v] = code % d;
    code /= d;
  }
  return o;
}

std::string format_outcome(const TcpNet& net, const Outcome& o) {
  std::string out;
  for (VarIndex v = 0; v < net.size(); ++v) {
    if (v) out += ',';
    out += net.variable(v).name + "=" + net.variable(v).domain[o[v]];
  }
  return out;
}

std::string format_assignment(const PartialAssignment& k) {
  std::string out;
  for (const auto& [name, value] : k) {
    if (!out.empty()) out += ',';
    out += name + "=" + value;
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

PartialAssignment parse_assignment(std::string_view text) {
  PartialAssignment k;
  while (!trim(text).empty()) {
    const auto comma = text.find(',');
    std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{}
                                           : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidArgument,
                  "expected X=v, got '" + std::string(item) + "'");
    }
    std::string name(trim(item.substr(0, eq)));
    std::string value(trim(item.substr(eq + 1)));
    if (name.empty() || value.empty()) {
      throw Error(ErrorCode::InvalidArgument,
                  "expected X=v, got '" + std::string(item) + "'");
    }
    auto [it, inserted] = k.emplace(name, value);
    if (!inserted && it->second != value) {
      throw Error(ErrorCode::InvalidArgument,
                  "variable '" + name + "' bound twice");
    }
  }
  return k;
}

Outcome to_outcome(const TcpNet& net, const PartialAssignment& k) {
  Outcome o(net.size(), 0);
  std::vector<bool> bound(net.size(), false);
  for (const auto& [name, value] : k) {
    VarIndex v = net.index_of(name);
    o[v] = net.value_index(v, value);
    bound[v] = true;
  }
  for (VarIndex v = 0; v < net.size(); ++v) {
    if (!bound[v]) {
      throw Error(ErrorCode::IncompleteOutcome,
                  "outcome does not bind '" + net.variable(v).name + "'");
    }
  }
  return o;
}

PartialAssignment to_assignment(const TcpNet& net, const Outcome& o) {
  PartialAssignment k;
  for (VarIndex v = 0; v < net.size(); ++v) {
    k[net.variable(v).name] = net.variable(v).domain[o[v]];
  }
  return k;
}

void check_outcome(const TcpNet& net, const Outcome& o) {
  if (o.size() != net.size()) {
    throw Error(ErrorCode::IncompleteOutcome,
                "outcome has " + std::to_string(o.size()) + " values, net has " +
                    std::to_string(net.size()) + " variables");
  }
  for (VarIndex v = 0; v < net.size(); ++v) {
    if (o[v] >= net.domain_size(v)) {
      throw Error(ErrorCode::UnknownValue,
                  "value index out of range for '" + net.variable(v).name + "'");
    }
  }
}

}  // namespace tcpnet
