#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "support.hpp"
#include "tcpnet/io.hpp"

using namespace tcpnet;

namespace {

ParseError parse_failure(std::string_view text) {
  try {
    parse_net_spec(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for: " << text;
  return ParseError("", 0, 0, "", "");
}

}  // namespace

TEST(NetDocument, FixturesRoundTrip) {
  for (const char* file : {"evening_dress.tcpnet", "flight.tcpnet",
                           "abc_counterexample.tcpnet", "mixed_cycle_directed.tcpnet",
                           "mixed_cycle_blocked.tcpnet"}) {
    const TcpNet net = load_net(fixtures::path(file));
    const std::string text = serialize_net(net);
    EXPECT_EQ(parse_net(text), net) << file;
    EXPECT_EQ(serialize_net(parse_net(text)), text) << file;
  }
}

TEST(NetDocument, RandomNetsRoundTrip) {
  std::mt19937 rng(79);
  for (int i = 0; i < 100; ++i) {
    gen::NetOptions opt;
    opt.max_domain = 4;
    const TcpNet net = TcpNet::build(gen::random_net(rng, opt));
    EXPECT_EQ(parse_net(serialize_net(net)), net) << "net " << i;
  }
}

TEST(NetDocument, ChainsListValuesBestFirst) {
  const NetSpec spec = parse_net_spec(R"({
    "format_version": "1.0",
    "variables": [{"name": "X", "domain": ["a", "b", "c", "d"]}],
    "cpts": [{"variable": "X", "rows": [{"order": [["c", "a", "b"], ["d", "b"]]}]}]
  })");
  const TcpNet net = TcpNet::build(spec);
  const auto& order = net.row(0, Outcome{0});
  EXPECT_TRUE(order.prefers(2, 1));
  EXPECT_TRUE(order.prefers(3, 1));
  EXPECT_FALSE(order.prefers(2, 3));
  EXPECT_FALSE(order.prefers(3, 2));
  // A partial order is written back as cover pairs and reads the same.
  EXPECT_EQ(parse_net(serialize_net(net)), net);
}

TEST(NetDocument, SyntaxErrorsCarryPosition) {
  const auto e = parse_failure("{\n  \"format_version\": \"1.0\",\n  \"variables\": [,]\n}");
  EXPECT_EQ(e.reason(), "syntax");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 17u);
  EXPECT_EQ(e.code(), ErrorCode::ParseError);
}

TEST(NetDocument, SchemaErrorsCarryPointer) {
  {
    const auto e = parse_failure(R"({"format_version": "2.0", "variables": []})");
    EXPECT_EQ(e.reason(), "bad-version");
    EXPECT_EQ(e.path(), "/format_version");
  }
  {
    const auto e = parse_failure(R"({"variables": []})");
    EXPECT_EQ(e.reason(), "missing-field");
  }
  {
    const auto e = parse_failure(
        R"({"format_version": "1.0", "variables": [{"name": "X", "domain": "ab"}]})");
    EXPECT_EQ(e.reason(), "wrong-type");
    EXPECT_EQ(e.path(), "/variables/0/domain");
  }
  {
    const auto e = parse_failure(R"({"format_version": "1.0", "variables": [], "extra": 1})");
    EXPECT_EQ(e.reason(), "unknown-field");
    EXPECT_EQ(e.path(), "/extra");
  }
  {
    const auto e = parse_failure(
        R"({"format_version": "1.0", "variables": [], "cp_arcs": [["A"]]})");
    EXPECT_EQ(e.reason(), "wrong-type");
    EXPECT_EQ(e.path(), "/cp_arcs/0");
  }
}

TEST(NetDocument, SemanticErrorsSurfaceAsValidation) {
  const std::string text = R"({"format_version": "1.0",
    "variables": [{"name": "X", "domain": ["a", "b"]}], "cp_arcs": [["X", "Y"]]})";
  EXPECT_NO_THROW(parse_net_spec(text));
  EXPECT_THROW(parse_net(text), ValidationFailed);
  const std::string outside = R"({"format_version": "1.0",
    "variables": [{"name": "X", "domain": ["a", "b"]}],
    "cpts": [{"variable": "X", "rows": [{"order": [["a", "z"]]}]}]})";
  try {
    parse_net(outside);
    FAIL();
  } catch (const ValidationFailed& e) {
    EXPECT_TRUE(e.report().has("unknown-value"));
  }
}

TEST(ConstraintDocument, RoundTripAndErrors) {
  const auto specs = load_constraints(fixtures::path("velvet_or_silk.json"));
  ASSERT_EQ(specs.size(), 1u);
  EXPECT_EQ(specs[0].scope, (std::vector<std::string>{"J", "P"}));
  const auto again = parse_constraints(serialize_constraints(specs));
  ASSERT_EQ(again.size(), 1u);
  EXPECT_EQ(again[0].scope, specs[0].scope);
  EXPECT_EQ(again[0].allowed, specs[0].allowed);
  EXPECT_THROW(parse_constraints(R"({"format_version": "1.0"})"), ParseError);
  EXPECT_THROW(parse_constraints(R"({"format_version": "1.0", "constraints": [{"scope": ["J"]}]})"),
               ParseError);
}

TEST(Files, MissingFileIsAnIoError) {
  try {
    read_file(fixtures::path("does_not_exist.tcpnet"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.reason(), "io");
  }
}
