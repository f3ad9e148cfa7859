#include "tcpnet/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tcpnet {

using nlohmann::json;

ParseError::ParseError(std::string reason, std::size_t line,
                       std::size_t column, std::string path,
                       const std::string& message)
    : Error(ErrorCode::ParseError, message),
      reason_(std::move(reason)),
      line_(line),
      column_(column),
      path_(std::move(path)) {}

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is the 1-based count of bytes read when the error was detected.
    const std::size_t end = std::min<std::size_t>(e.byte, text.size() + 1);
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (const auto colon = what.find(": "); colon != std::string::npos) {
      what = what.substr(colon + 2);
    }
    throw ParseError("syntax", line, column, "",
                     std::to_string(line) + ":" + std::to_string(column) +
                         ": " + what);
  }
}

[[noreturn]] void schema_error(const std::string& reason,
                               const std::string& path,
                               const std::string& message) {
  throw ParseError(reason, 1, 1, path, (path.empty() ? "/" : path) + ": " + message);
}

// Typed accessors that report the JSON pointer of the offending element.
class Reader {
 public:
  static const json& object(const json& j, const std::string& path) {
    if (!j.is_object()) schema_error("wrong-type", path, "expected an object");
    return j;
  }
  static const json& array(const json& j, const std::string& path) {
    if (!j.is_array()) schema_error("wrong-type", path, "expected an array");
    return j;
  }
  static std::string string(const json& j, const std::string& path) {
    if (!j.is_string()) schema_error("wrong-type", path, "expected a string");
    return j.get<std::string>();
  }
  static const json& field(const json& obj, const std::string& key,
                           const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      schema_error("missing-field", path, "missing field '" + key + "'");
    }
    return *it;
  }
  static void only(const json& obj, std::initializer_list<std::string_view> keys,
                   const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        schema_error("unknown-field", path + "/" + key,
                     "unknown field '" + key + "'");
      }
    }
  }
  static std::vector<std::string> strings(const json& j,
                                          const std::string& path) {
    std::vector<std::string> out;
    array(j, path);
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(string(j[i], path + "/" + std::to_string(i)));
    }
    return out;
  }
  static PartialAssignment assignment(const json& j, const std::string& path) {
    object(j, path);
    PartialAssignment out;
    for (const auto& [key, value] : j.items()) {
      out[key] = string(value, path + "/" + key);
    }
    return out;
  }
  static std::pair<std::string, std::string> pair(const json& j,
                                                  const std::string& path) {
    const auto items = strings(j, path);
    if (items.size() != 2) {
      schema_error("wrong-type", path, "expected a pair of names");
    }
    return {items[0], items[1]};
  }
};

void check_version(const json& doc) {
  const std::string version =
      Reader::string(Reader::field(doc, "format_version", ""), "/format_version");
  if (version != kFormatVersion) {
    schema_error("bad-version", "/format_version",
                 "unsupported format_version '" + version + "'");
  }
}

std::string at(const std::string& base, std::size_t i) {
  return base + "/" + std::to_string(i);
}

}  // namespace

NetSpec parse_net_spec(std::string_view text) {
  const json doc = parse_json(text);
  using R = Reader;
  R::object(doc, "");
  R::only(doc,
          {"format_version", "name", "variables", "cp_arcs", "i_arcs",
           "ci_arcs", "cpts"},
          "");
  check_version(doc);
  if (doc.contains("name")) R::string(doc["name"], "/name");

  NetSpec spec;
  const json& vars = R::array(R::field(doc, "variables", ""), "/variables");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string p = at("/variables", i);
    R::object(vars[i], p);
    R::only(vars[i], {"name", "domain"}, p);
    spec.variables.push_back(
        {R::string(R::field(vars[i], "name", p), p + "/name"),
         R::strings(R::field(vars[i], "domain", p), p + "/domain")});
  }
  auto arcs = [&](const char* key,
                  std::vector<std::pair<std::string, std::string>>& out) {
    if (!doc.contains(key)) return;
    const std::string base = std::string("/") + key;
    const json& list = R::array(doc[key], base);
    for (std::size_t i = 0; i < list.size(); ++i) {
      out.push_back(R::pair(list[i], at(base, i)));
    }
  };
  arcs("cp_arcs", spec.cp_arcs);
  arcs("i_arcs", spec.i_arcs);

  if (doc.contains("ci_arcs")) {
    const json& list = R::array(doc["ci_arcs"], "/ci_arcs");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = at("/ci_arcs", i);
      R::object(list[i], p);
      R::only(list[i], {"between", "selector", "rows"}, p);
      CiArcSpec arc;
      std::tie(arc.first, arc.second) =
          R::pair(R::field(list[i], "between", p), p + "/between");
      arc.selector = R::strings(R::field(list[i], "selector", p), p + "/selector");
      const json& rows = R::array(R::field(list[i], "rows", p), p + "/rows");
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::string rp = at(p + "/rows", r);
        R::object(rows[r], rp);
        R::only(rows[r], {"when", "more_important"}, rp);
        arc.rows.push_back(
            {R::assignment(R::field(rows[r], "when", rp), rp + "/when"),
             R::string(R::field(rows[r], "more_important", rp),
                       rp + "/more_important")});
      }
      spec.ci_arcs.push_back(std::move(arc));
    }
  }

  if (doc.contains("cpts")) {
    const json& list = R::array(doc["cpts"], "/cpts");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string p = at("/cpts", i);
      R::object(list[i], p);
      R::only(list[i], {"variable", "rows"}, p);
      CptSpec cpt;
      cpt.variable = R::string(R::field(list[i], "variable", p), p + "/variable");
      const json& rows = R::array(R::field(list[i], "rows", p), p + "/rows");
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::string rp = at(p + "/rows", r);
        R::object(rows[r], rp);
        R::only(rows[r], {"when", "order"}, rp);
        OrderRowSpec row;
        if (rows[r].contains("when")) {
          row.when = R::assignment(rows[r]["when"], rp + "/when");
        }
        const json& chains = R::array(R::field(rows[r], "order", rp), rp + "/order");
        for (std::size_t c = 0; c < chains.size(); ++c) {
          const auto chain = R::strings(chains[c], at(rp + "/order", c));
          // A chain lists values best first.
          for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
            row.pairs.emplace_back(chain[k], chain[k + 1]);
          }
        }
        cpt.rows.push_back(std::move(row));
      }
      spec.cpts.push_back(std::move(cpt));
    }
  }
  return spec;
}

TcpNet parse_net(std::string_view text) {
  return TcpNet::build(parse_net_spec(text));
}

namespace {

json assignment_json(const PartialAssignment& k) {
  json out = json::object();
  for (const auto& [name, value] : k) out[name] = value;
  return out;
}

// One chain when the order is total, otherwise its cover pairs.
json order_json(const TcpNet& net, VarIndex v, const PreferenceOrder& order) {
  const auto& domain = net.variable(v).domain;
  json chains = json::array();
  const auto line = order.linear_extension();
  bool total = true;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    total = total && order.prefers(line[i], line[i + 1]);
  }
  if (total) {
    json chain = json::array();
    for (ValueIndex x : line) chain.push_back(domain[x]);
    chains.push_back(std::move(chain));
    return chains;
  }
  for (const auto& [better, worse] : order.cover_pairs()) {
    chains.push_back(json::array({domain[better], domain[worse]}));
  }
  return chains;
}

}  // namespace

std::string serialize_net(const TcpNet& net) {
  const NetSpec spec = net.to_spec();
  json doc;
  doc["format_version"] = kFormatVersion;
  json vars = json::array();
  for (const auto& v : spec.variables) {
    vars.push_back({{"name", v.name}, {"domain", v.domain}});
  }
  doc["variables"] = std::move(vars);
  auto arcs = [](const auto& list) {
    json out = json::array();
    for (const auto& [a, b] : list) out.push_back(json::array({a, b}));
    return out;
  };
  doc["cp_arcs"] = arcs(spec.cp_arcs);
  doc["i_arcs"] = arcs(spec.i_arcs);
  json ci = json::array();
  for (const auto& arc : spec.ci_arcs) {
    json rows = json::array();
    for (const auto& row : arc.rows) {
      rows.push_back({{"when", assignment_json(row.when)},
                      {"more_important", row.more_important}});
    }
    ci.push_back({{"between", json::array({arc.first, arc.second})},
                  {"selector", arc.selector},
                  {"rows", std::move(rows)}});
  }
  doc["ci_arcs"] = std::move(ci);

  // Rows come from the compiled tables so that chains can be recovered.
  json cpts = json::array();
  for (VarIndex v = 0; v < net.size(); ++v) {
    const CpTable& table = net.cpt(v);
    json rows = json::array();
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      if (!table.specified[r]) continue;
      PartialAssignment when;
      const auto values = decode_assignment(net, table.parents, r);
      for (std::size_t i = 0; i < table.parents.size(); ++i) {
        const Variable& p = net.variable(table.parents[i]);
        when[p.name] = p.domain[values[i]];
      }
      rows.push_back({{"when", assignment_json(when)},
                      {"order", order_json(net, v, table.rows[r])}});
    }
    if (rows.empty()) continue;
    cpts.push_back({{"variable", net.variable(v).name}, {"rows", std::move(rows)}});
  }
  doc["cpts"] = std::move(cpts);
  return doc.dump(2) + "\n";
}

std::vector<ConstraintSpec> parse_constraints(std::string_view text) {
  const json doc = parse_json(text);
  using R = Reader;
  R::object(doc, "");
  R::only(doc, {"format_version", "constraints"}, "");
  check_version(doc);
  std::vector<ConstraintSpec> out;
  const json& list = R::array(R::field(doc, "constraints", ""), "/constraints");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = at("/constraints", i);
    R::object(list[i], p);
    R::only(list[i], {"scope", "allowed"}, p);
    ConstraintSpec c;
    c.scope = R::strings(R::field(list[i], "scope", p), p + "/scope");
    const json& allowed = R::array(R::field(list[i], "allowed", p), p + "/allowed");
    for (std::size_t t = 0; t < allowed.size(); ++t) {
      c.allowed.push_back(R::strings(allowed[t], at(p + "/allowed", t)));
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string serialize_constraints(const std::vector<ConstraintSpec>& specs) {
  json list = json::array();
  for (const auto& c : specs) {
    list.push_back({{"scope", c.scope}, {"allowed", c.allowed}});
  }
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["constraints"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("io", 0, 0, "", "cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TcpNet load_net(const std::string& path) { return parse_net(read_file(path)); }

std::vector<ConstraintSpec> load_constraints(const std::string& path) {
  return parse_constraints(read_file(path));
}

}  // namespace tcpnet
