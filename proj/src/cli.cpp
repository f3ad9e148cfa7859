#include "tcpnet/cli.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcpnet/acyclicity.hpp"
#include "tcpnet/constraints.hpp"
#include "tcpnet/dominance.hpp"
#include "tcpnet/io.hpp"
#include "tcpnet/optimizer.hpp"
#include "tcpnet/semantics.hpp"

namespace tcpnet {

using nlohmann::json;

namespace {

// Raised for bad command-line values that CLI11 cannot see (outcome strings).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for documents that parse but do not fit the net they accompany.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Args {
  std::string net;
  std::string constraints;
  std::string better;
  std::string worse;
  std::string method = "auto";
  std::vector<std::string> assign;
  std::optional<std::size_t> budget;
  std::size_t cap = std::size_t{1} << 20;
  bool first = false;
  bool all = false;
  bool no_prune = false;
  bool edges = false;
};

struct Result {
  int exit = kExitOk;
  json verdict;
  json certificate;  // null when absent
  std::string text;
};

Outcome outcome_arg(const TcpNet& net, const std::string& text,
                    const char* flag) {
  try {
    return to_outcome(net, parse_assignment(text));
  } catch (const Error& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

std::vector<HardConstraint> constraints_arg(const TcpNet& net,
                                            const std::string& path) {
  if (path.empty()) return {};
  const auto specs = load_constraints(path);
  try {
    return compile_constraints(net, specs);
  } catch (const Error& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::string label_text(const TcpNet& net, const FlipLabel& label) {
  const std::string& improved = net.variable(label.improved).name;
  if (label.kind == FlipKind::Cp) return "cp " + improved;
  return std::string(label.ci_arc ? "ci " : "i ") + improved + " over " +
         net.variable(label.worsened).name;
}

json label_json(const TcpNet& net, const FlipLabel& label) {
  json j;
  j["kind"] = label.kind == FlipKind::Cp ? "cp" : (label.ci_arc ? "ci" : "i");
  j["improved"] = net.variable(label.improved).name;
  if (label.kind == FlipKind::Importance) {
    j["worsened"] = net.variable(label.worsened).name;
  }
  return j;
}

json outcomes_json(const TcpNet& net, const std::vector<Outcome>& list) {
  json out = json::array();
  for (const Outcome& o : list) out.push_back(format_outcome(net, o));
  return out;
}

std::string lines(const TcpNet& net, const std::vector<Outcome>& list) {
  std::string text;
  for (const Outcome& o : list) text += format_outcome(net, o) + "\n";
  return text;
}

Result cmd_validate(const Args& a) {
  const NetSpec spec = parse_net_spec(read_file(a.net));
  const ValidationReport report = validate_net(spec);
  Result r;
  r.exit = report.ok ? kExitOk : kExitData;
  json issues = json::array();
  std::ostringstream text;
  text << (report.ok ? "valid" : "invalid") << "\n";
  for (const auto& issue : report.issues) {
    const char* severity =
        issue.severity == Severity::Error ? "error" : "warning";
    issues.push_back({{"severity", severity},
                      {"code", issue.code},
                      {"location", issue.location},
                      {"message", issue.message}});
    text << severity << " " << issue.code << " at " << issue.location << ": "
         << issue.message << "\n";
  }
  r.verdict = {{"ok", report.ok}, {"issues", std::move(issues)}};
  r.text = text.str();
  return r;
}

Result cmd_check_acyclic(const Args& a) {
  const TcpNet net = load_net(a.net);
  AcyclicityPolicy policy;
  if (a.method == "brute") {
    policy.method = CheckMethod::Brute;
  } else if (a.method == "cycles") {
    policy.method = CheckMethod::Cycles;
  } else if (a.method == "sat") {
    policy.method = CheckMethod::Sat;
  }
  if (a.budget) {
    policy.shared_budget = *a.budget;
    policy.fallback_budget = *a.budget;
  }
  const AcyclicityVerdict v = check_conditional_acyclicity(net, policy);
  Result r;
  r.verdict = {{"status", to_string(v.status)},
               {"method", a.method},
               {"decided_by", to_string(v.decided_by)},
               {"cycles_examined", v.cycles_examined}};
  if (!v.note.empty()) r.verdict["note"] = v.note;
  std::ostringstream text;
  text << to_string(v.status) << " (method " << a.method << ", decided by "
       << to_string(v.decided_by) << ")\n";
  switch (v.status) {
    case AcyclicityStatus::ConditionallyAcyclic: r.exit = kExitOk; break;
    case AcyclicityStatus::ConditionallyCyclic: r.exit = kExitNegative; break;
    case AcyclicityStatus::Unknown: r.exit = kExitUnknown; break;
  }
  if (v.witness) {
    json cycle = json::array();
    std::string arrows;
    for (VarIndex x : v.cycle) {
      cycle.push_back(net.variable(x).name);
      arrows += net.variable(x).name + " -> ";
    }
    arrows += net.variable(v.cycle.front()).name;
    const PartialAssignment w = selector_assignment(net, *v.witness);
    json selectors = json::object();
    for (const auto& [name, value] : w) selectors[name] = value;
    r.certificate = {{"selectors", std::move(selectors)},
                     {"cycle", std::move(cycle)}};
    text << "selectors: " << format_assignment(w) << "\n"
         << "cycle: " << arrows << "\n";
  }
  if (!v.note.empty()) text << "note: " << v.note << "\n";
  r.text = text.str();
  return r;
}

Result cmd_optimize(const Args& a) {
  const TcpNet net = load_net(a.net);
  PartialAssignment x;
  try {
    for (const auto& item : a.assign) {
      for (const auto& [name, value] : parse_assignment(item)) {
        net.value_index(net.index_of(name), value);
        x[name] = value;
      }
    }
  } catch (const Error& e) {
    throw UsageError(std::string("--assign: ") + e.what());
  }
  const Outcome o = forward_sweep(net, x);
  Result r;
  r.verdict = {{"outcome", format_outcome(net, o)}};
  r.text = format_outcome(net, o) + "\n";
  return r;
}

json sequence_json(const TcpNet& net, const FlippingSequence& seq) {
  json steps = json::array();
  for (std::size_t i = 0; i < seq.labels.size(); ++i) {
    json step = label_json(net, seq.labels[i]);
    step["from"] = format_outcome(net, seq.outcomes[i]);
    step["to"] = format_outcome(net, seq.outcomes[i + 1]);
    steps.push_back(std::move(step));
  }
  return {{"steps", std::move(steps)}};
}

Result cmd_dominates(const Args& a) {
  const TcpNet net = load_net(a.net);
  const Outcome better = outcome_arg(net, a.better, "--better");
  const Outcome worse = outcome_arg(net, a.worse, "--worse");
  const DominanceVerdict v =
      dominates(net, better, worse, a.budget.value_or(kDefaultDominanceBudget));
  Result r;
  r.verdict = {{"status", to_string(v.status)}, {"expanded", v.expanded}};
  std::ostringstream text;
  text << to_string(v.status) << "\n";
  switch (v.status) {
    case DominanceStatus::Dominates: {
      if (!verify_sequence(net, v.certificate)) {
        throw std::logic_error("dominance certificate failed to verify");
      }
      r.exit = kExitOk;
      r.certificate = sequence_json(net, v.certificate);
      const auto& seq = v.certificate;
      text << "  " << format_outcome(net, seq.outcomes.front()) << "\n";
      for (std::size_t i = 0; i < seq.labels.size(); ++i) {
        text << "  -> " << format_outcome(net, seq.outcomes[i + 1]) << "  ["
             << label_text(net, seq.labels[i]) << "]\n";
      }
      break;
    }
    case DominanceStatus::NotDominated: r.exit = kExitNegative; break;
    case DominanceStatus::Unknown:
      r.exit = kExitUnknown;
      text << "budget of " << a.budget.value_or(kDefaultDominanceBudget)
           << " expansions exhausted\n";
      break;
  }
  r.text = text.str();
  return r;
}

Result cmd_solve(const Args& a) {
  const TcpNet net = load_net(a.net);
  const auto constraints = constraints_arg(net, a.constraints);
  SearchOptions options;
  options.prune = !a.no_prune;
  if (a.budget) options.dominance_budget = *a.budget;
  const SearchMode mode = a.first ? SearchMode::First : SearchMode::All;
  const SolutionSet set = search_tcp(net, constraints, mode, options);
  Result r;
  r.exit = set.solutions.empty() ? kExitNegative : kExitOk;
  r.verdict = {{"mode", a.first ? "first" : "all"},
               {"solutions", outcomes_json(net, set.solutions)},
               {"stats",
                {{"calls", set.stats.calls},
                 {"inconsistent", set.stats.inconsistent},
                 {"pruned", set.stats.pruned},
                 {"dominance_tests", set.stats.dominance_tests},
                 {"rejected", set.stats.rejected}}}};
  r.text = set.solutions.empty() ? "infeasible\n" : lines(net, set.solutions);
  return r;
}

Result cmd_construct_order(const Args& a) {
  const TcpNet net = load_net(a.net);
  const auto order = construct_satisfying_order(net, a.cap);
  Result r;
  r.verdict = {{"order", outcomes_json(net, order)}};
  r.text = lines(net, order);
  return r;
}

Result cmd_oracle_entails(const Args& a) {
  const TcpNet net = load_net(a.net);
  const Outcome better = outcome_arg(net, a.better, "--better");
  const Outcome worse = outcome_arg(net, a.worse, "--worse");
  const bool entailed = oracle_entails(net, better, worse, a.cap);
  Result r;
  r.exit = entailed ? kExitOk : kExitNegative;
  r.verdict = {{"entails", entailed}};
  r.text = entailed ? "entailed\n" : "not entailed\n";
  return r;
}

Result cmd_oracle_nondominated(const Args& a) {
  const TcpNet net = load_net(a.net);
  const auto constraints = constraints_arg(net, a.constraints);
  if (net.outcome_count() > a.cap) {
    throw Error(ErrorCode::TooLarge,
                "outcome space exceeds " + std::to_string(a.cap));
  }
  std::vector<Outcome> feasible;
  for (std::size_t code = 0; code < net.outcome_count(); ++code) {
    Outcome o = decode_outcome(net, code);
    if (satisfies_all(constraints, o)) feasible.push_back(std::move(o));
  }
  const auto best = oracle_nondominated(net, feasible, a.cap);
  Result r;
  r.exit = best.empty() ? kExitNegative : kExitOk;
  r.verdict = {{"feasible", feasible.size()},
               {"nondominated", outcomes_json(net, best)}};
  r.text = best.empty() ? "infeasible\n" : lines(net, best);
  return r;
}

Result cmd_oracle_flipgraph(const Args& a) {
  const TcpNet net = load_net(a.net);
  const FlipGraph g = build_flip_graph(net, a.cap);
  Result r;
  r.verdict = {{"nodes", g.node_count()}, {"edges", g.edge_count()}};
  std::ostringstream text;
  text << g.node_count() << " outcomes, " << g.edge_count() << " edges\n";
  if (a.edges) {
    json list = json::array();
    for (std::size_t from = 0; from < g.node_count(); ++from) {
      const auto targets = g.successors(from);
      const auto labels = g.labels(from);
      const std::string worse = format_outcome(net, decode_outcome(net, from));
      for (std::size_t k = 0; k < targets.size(); ++k) {
        const std::string better =
            format_outcome(net, decode_outcome(net, targets[k]));
        json edge = label_json(net, labels[k]);
        edge["from"] = worse;
        edge["to"] = better;
        list.push_back(std::move(edge));
        text << worse << " -> " << better << "  ["
             << label_text(net, labels[k]) << "]\n";
      }
    }
    r.verdict["edge_list"] = std::move(list);
  }
  if (const auto cycle = g.find_cycle()) {
    std::vector<Outcome> outcomes;
    for (std::size_t node : *cycle) outcomes.push_back(decode_outcome(net, node));
    r.exit = kExitNegative;
    r.verdict["cycle"] = outcomes_json(net, outcomes);
    text << "cycle:\n" << lines(net, outcomes);
  } else {
    r.verdict["cycle"] = nullptr;
    text << "acyclic\n";
  }
  r.text = text.str();
  return r;
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooLarge:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::UnknownDominance:
      return kExitUnknown;
    case ErrorCode::NoRoot:
      return kExitNegative;
    case ErrorCode::NonBinarySelector:
    case ErrorCode::WidthExceeded:
      return kExitUsage;
    default:
      return kExitData;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Reasoning engine for TCP-nets", "tcpnet"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  bool timing = false;
  app.add_flag("--json", as_json, "Print a JSON envelope");
  app.add_flag("--timing", timing, "Report wall-clock time");
  Args a;

  auto net_arg = [&](CLI::App* cmd) {
    cmd->add_option("net", a.net, "Net document")->required();
  };
  auto outcome_args = [&](CLI::App* cmd) {
    cmd->add_option("--better", a.better, "Outcome as X=v,Y=w")->required();
    cmd->add_option("--worse", a.worse, "Outcome as X=v,Y=w")->required();
  };
  auto cap_arg = [&](CLI::App* cmd) {
    cmd->add_option("--cap", a.cap, "Outcome space limit");
  };

  auto* validate = app.add_subcommand("validate", "Check a net document");
  net_arg(validate);

  auto* check = app.add_subcommand("check-acyclic",
                                   "Decide conditional acyclicity");
  net_arg(check);
  check->add_option("--method", a.method, "auto, brute, cycles or sat")
      ->check(CLI::IsMember({"auto", "brute", "cycles", "sat"}));
  check->add_option("--budget", a.budget, "Enumeration budget per stage");

  auto* optimize = app.add_subcommand("optimize", "Forward sweep");
  net_arg(optimize);
  optimize->add_option("--assign", a.assign, "Fixed values as X=v");

  auto* dominance = app.add_subcommand("dominates", "Dominance query");
  net_arg(dominance);
  outcome_args(dominance);
  dominance->add_option("--budget", a.budget, "Outcomes to expand");

  auto* solve = app.add_subcommand("solve", "Constrained optimization");
  net_arg(solve);
  solve->add_option("--constraints", a.constraints, "Constraint document")
      ->required();
  auto* first = solve->add_flag("--first", a.first, "Stop at one solution");
  solve->add_flag("--all", a.all, "All non-dominated solutions (default)")
      ->excludes(first);
  solve->add_flag("--no-prune", a.no_prune, "Disable containment pruning");
  solve->add_option("--budget", a.budget, "Per-test dominance budget");

  auto* construct = app.add_subcommand("construct-order",
                                       "Total order satisfying the net");
  net_arg(construct);
  cap_arg(construct);

  auto* oracle = app.add_subcommand("oracle", "Brute-force reference tools");
  oracle->require_subcommand(1);
  auto* entails = oracle->add_subcommand("entails", "Flip-graph reachability");
  net_arg(entails);
  outcome_args(entails);
  cap_arg(entails);
  auto* nondominated = oracle->add_subcommand(
      "nondominated", "Non-dominated feasible outcomes");
  net_arg(nondominated);
  nondominated->add_option("--constraints", a.constraints,
                           "Constraint document");
  cap_arg(nondominated);
  auto* flipgraph = oracle->add_subcommand("flipgraph", "Flip graph summary");
  net_arg(flipgraph);
  flipgraph->add_flag("--edges", a.edges, "List every edge");
  cap_arg(flipgraph);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  std::string command;
  std::function<Result(const Args&)> handler;
  if (*validate) {
    command = "validate", handler = cmd_validate;
  } else if (*check) {
    command = "check-acyclic", handler = cmd_check_acyclic;
  } else if (*optimize) {
    command = "optimize", handler = cmd_optimize;
  } else if (*dominance) {
    command = "dominates", handler = cmd_dominates;
  } else if (*solve) {
    command = "solve", handler = cmd_solve;
  } else if (*construct) {
    command = "construct-order", handler = cmd_construct_order;
  } else if (*entails) {
    command = "oracle entails", handler = cmd_oracle_entails;
  } else if (*nondominated) {
    command = "oracle nondominated", handler = cmd_oracle_nondominated;
  } else {
    command = "oracle flipgraph", handler = cmd_oracle_flipgraph;
  }

  json inputs = {{"net", a.net}};
  if (!a.constraints.empty()) inputs["constraints"] = a.constraints;
  if (!a.better.empty()) inputs["better"] = a.better;
  if (!a.worse.empty()) inputs["worse"] = a.worse;
  if (*check) inputs["method"] = a.method;
  if (!a.assign.empty()) inputs["assign"] = a.assign;
  if (a.budget) inputs["budget"] = *a.budget;
  if (*solve) inputs["mode"] = a.first ? "first" : "all";

  const auto start = std::chrono::steady_clock::now();
  Result result;
  json error;
  try {
    result = handler(a);
  } catch (const ParseError& e) {
    result.exit = kExitData;
    error = {{"code", e.reason()}, {"message", e.what()}};
    if (e.line() > 0) {
      error["line"] = e.line();
      error["column"] = e.column();
    }
    if (!e.path().empty()) error["path"] = e.path();
  } catch (const ValidationFailed& e) {
    result.exit = kExitData;
    json issues = json::array();
    for (const auto& issue : e.report().issues) {
      if (issue.severity != Severity::Error) continue;
      issues.push_back({{"code", issue.code},
                        {"location", issue.location},
                        {"message", issue.message}});
    }
    error = {{"code", "validation"}, {"message", e.what()},
             {"issues", std::move(issues)}};
  } catch (const Error& e) {
    result.exit = exit_for(e.code());
    error = {{"code", to_string(e.code())}, {"message", e.what()}};
  } catch (const UsageError& e) {
    result.exit = kExitUsage;
    error = {{"code", "usage"}, {"message", e.what()}};
  } catch (const DataError& e) {
    result.exit = kExitData;
    error = {{"code", "data"}, {"message", e.what()}};
  } catch (const std::exception& e) {
    result.exit = kExitUnknown;
    error = {{"code", "internal"}, {"message", e.what()}};
  }
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();

  if (as_json) {
    json envelope;
    envelope["command"] = command;
    envelope["inputs"] = std::move(inputs);
    envelope["verdict"] = error.is_null() ? result.verdict : json(nullptr);
    if (!result.certificate.is_null()) {
      envelope["certificate"] = result.certificate;
    }
    if (!error.is_null()) envelope["error"] = error;
    envelope["exit_code"] = result.exit;
    envelope["timing"] = timing ? json{{"ms", ms}} : json(nullptr);
    out << envelope.dump(2) << "\n";
  } else {
    if (!error.is_null()) {
      err << "tcpnet " << command << ": " << error["message"].get<std::string>()
          << "\n";
      if (error.contains("issues")) {
        for (const auto& issue : error["issues"]) {
          err << "  " << issue["code"].get<std::string>() << " at "
              << issue["location"].get<std::string>() << ": "
              << issue["message"].get<std::string>() << "\n";
        }
      }
    } else {
      out << result.text;
    }
    if (timing) err << "time: " << ms << " ms\n";
  }
  return result.exit;
}

}  // namespace tcpnet
