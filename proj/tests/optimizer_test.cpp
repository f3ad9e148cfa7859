#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "support.hpp"
#include "tcpnet/io.hpp"
#include "tcpnet/optimizer.hpp"

using namespace tcpnet;

namespace {

ref::Values values(const Outcome& o) { return ref::Values(o.begin(), o.end()); }

std::vector<HardConstraint> constraints_from(const TcpNet& net, const char* file) {
  return compile_constraints(net, load_constraints(fixtures::path(file)));
}

std::vector<std::string> formatted(const TcpNet& net, const std::vector<Outcome>& os) {
  std::vector<std::string> out;
  for (const auto& o : os) out.push_back(format_outcome(net, o));
  return out;
}

// Feasible outcomes not entailed-worse than another feasible outcome.
std::vector<Outcome> reference_optimal(const TcpNet& net, const ref::Closure& c,
                                       const std::vector<HardConstraint>& cs) {
  std::vector<Outcome> feasible;
  for (std::size_t code = 0; code < net.outcome_count(); ++code) {
    const Outcome o = decode_outcome(net, code);
    if (satisfies_all(cs, o)) feasible.push_back(o);
  }
  std::vector<Outcome> out;
  for (const auto& o : feasible) {
    const bool dominated = std::any_of(feasible.begin(), feasible.end(), [&](const Outcome& p) {
      return p != o && c.entails(values(p), values(o));
    });
    if (!dominated) out.push_back(o);
  }
  return out;
}

std::vector<Outcome> sorted(std::vector<Outcome> v) {
  std::sort(v.begin(), v.end());
  return v;
}

NetSpec three_free_variables() {
  NetSpec spec;
  for (const char* n : {"X", "Y", "Z"}) {
    spec.variables.push_back({n, {"a", "b"}});
    spec.cpts.push_back({n, {{{}, {{"a", "b"}}}}});
  }
  return spec;
}

}  // namespace

TEST(FindRoot, Fixtures) {
  EXPECT_EQ(find_root(fixtures::net("evening_dress.tcpnet")), 0u);
  const TcpNet flight = fixtures::net("flight.tcpnet");
  EXPECT_EQ(find_root(flight), flight.index_of("D"));
  try {
    find_root(fixtures::net("abc_counterexample.tcpnet"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoRoot);
  }
  EXPECT_THROW(find_root(TcpNet{}), Error);
}

TEST(ForwardSweep, Fixtures) {
  const TcpNet ed = fixtures::net("evening_dress.tcpnet");
  EXPECT_EQ(format_outcome(ed, forward_sweep(ed)), "J=b,P=b,S=r");
  EXPECT_EQ(format_outcome(ed, forward_sweep(ed, {{"J", "w"}})), "J=w,P=b,S=w");
  const TcpNet flight = fixtures::net("flight.tcpnet");
  EXPECT_EQ(format_outcome(flight, forward_sweep(flight)), "D=1d,A=ba,T=m,S=1s,C=b");
}

TEST(ForwardSweep, UnconstrainedResultIsUndominated) {
  std::mt19937 rng(61);
  for (int i = 0; i < 60; ++i) {
    gen::NetOptions opt;
    opt.variables = 5;
    opt.max_domain = 3;
    opt.cp_density = 0.5;
    const NetSpec spec = gen::random_acyclic_net(rng, opt);
    const TcpNet net = TcpNet::build(spec);
    const ref::Closure c = ref::closure(ref::from_spec(spec));
    const Outcome best = forward_sweep(net);
    for (const auto& o : c.outcomes) {
      EXPECT_FALSE(c.entails(o, values(best))) << "net " << i;
    }
  }
}

TEST(ForwardSweep, AgreesWithReduce) {
  std::mt19937 rng(67);
  for (int i = 0; i < 60; ++i) {
    gen::NetOptions opt;
    opt.variables = 5;
    opt.cp_density = 0.5;
    const TcpNet net = TcpNet::build(gen::random_acyclic_net(rng, opt));
    const PartialAssignment x{{"X1", "v1"}, {"X3", "v0"}};
    const Outcome full = forward_sweep(net, x);
    const TcpNet r = reduce(net, x);
    const Outcome part = forward_sweep(r);
    for (VarIndex v = 0; v < r.size(); ++v) {
      EXPECT_EQ(full[net.index_of(r.variable(v).name)], part[v]);
    }
    EXPECT_EQ(full[1], 1u);
    EXPECT_EQ(full[3], 0u);
  }
}

TEST(ForwardSweep, CpCycleHasNoRoot) {
  NetSpec spec = three_free_variables();
  spec.cp_arcs = {{"X", "Y"}, {"Y", "X"}};
  spec.cpts[0].rows = {{{{"Y", "a"}}, {{"a", "b"}}}, {{{"Y", "b"}}, {{"b", "a"}}}};
  spec.cpts[1].rows = {{{{"X", "a"}}, {{"a", "b"}}}, {{{"X", "b"}}, {{"b", "a"}}}};
  const TcpNet net = TcpNet::build(spec);
  try {
    forward_sweep(net);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoRoot);
  }
}

TEST(Components, JoinedByArcsAndActiveConstraints) {
  const TcpNet free = TcpNet::build(three_free_variables());
  EXPECT_EQ(components(free, ConstraintStore(free, {})).size(), 3u);
  const ConstraintStore tied(free, {HardConstraint{{0, 2}, {{0, 1}, {1, 0}}}});
  EXPECT_EQ(components(free, tied),
            (std::vector<std::vector<VarIndex>>{{0, 2}, {1}}));
  const ConstraintStore loose(free, {HardConstraint{{0, 2}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}}});
  EXPECT_EQ(components(free, loose).size(), 3u);

  const TcpNet flight = fixtures::net("flight.tcpnet");
  ConstraintStore store(flight, {});
  EXPECT_EQ(components(flight, store).size(), 1u);
  store.restrict_to(flight.index_of("D"), 0);
  store.commit_singletons();
  const auto parts = components(flight, store);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].size(), 4u);
}

TEST(SearchTcp, DressScenarios) {
  const TcpNet net = fixtures::net("evening_dress.tcpnet");
  const auto none = search_tcp(net, {});
  EXPECT_EQ(formatted(net, none.solutions), (std::vector<std::string>{"J=b,P=b,S=r"}));
  const auto white = search_tcp(net, constraints_from(net, "no_black_jacket.json"));
  EXPECT_EQ(formatted(net, white.solutions), (std::vector<std::string>{"J=w,P=b,S=w"}));
  const auto fabric =
      search_tcp(net, constraints_from(net, "velvet_or_silk.json"), SearchMode::First);
  ASSERT_EQ(fabric.solutions.size(), 1u);
  EXPECT_EQ(format_outcome(net, fabric.solutions[0]), "J=b,P=w,S=w");
  const auto all = search_tcp(net, constraints_from(net, "velvet_or_silk.json"));
  EXPECT_EQ(formatted(net, all.solutions), (std::vector<std::string>{"J=b,P=w,S=w"}));
  EXPECT_GT(all.stats.dominance_tests, 0u);
}

TEST(SearchTcp, EdgeCases) {
  const TcpNet ed = fixtures::net("evening_dress.tcpnet");
  EXPECT_TRUE(search_tcp(ed, {HardConstraint{{0}, {}}}).solutions.empty());
  const auto empty = search_tcp(TcpNet{}, {});
  ASSERT_EQ(empty.solutions.size(), 1u);
  EXPECT_TRUE(empty.solutions[0].empty());
  try {
    search_tcp(fixtures::net("abc_counterexample.tcpnet"), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoRoot);
  }
  SearchOptions tight;
  tight.dominance_budget = 0;
  try {
    search_tcp(ed, constraints_from(ed, "velvet_or_silk.json"), SearchMode::All, tight);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownDominance);
  }
}

TEST(SearchTcp, MatchesReferenceOnRandomNets) {
  std::mt19937 rng(71);
  std::size_t multi = 0, pruned = 0;
  for (int i = 0; i < 60; ++i) {
    gen::NetOptions opt;
    opt.variables = 4 + i % 3;
    opt.max_domain = 2 + i % 2;
    const NetSpec spec = gen::random_acyclic_net(rng, opt);
    const TcpNet net = TcpNet::build(spec);
    const auto cs = gen::random_constraints(rng, net, 1 + i % 3, 3, 0.6);
    const ref::Closure c = ref::closure(ref::from_spec(spec));
    const auto want = reference_optimal(net, c, cs);

    const auto all = search_tcp(net, cs);
    ASSERT_EQ(sorted(all.solutions), sorted(want)) << "net " << i;
    multi += want.size() > 1;
    pruned += all.stats.pruned;
    for (std::size_t a = 0; a < all.solutions.size(); ++a) {
      for (std::size_t b = a + 1; b < all.solutions.size(); ++b) {
        EXPECT_FALSE(c.entails(values(all.solutions[b]), values(all.solutions[a])));
      }
    }
    SearchOptions no_prune;
    no_prune.prune = false;
    EXPECT_EQ(sorted(search_tcp(net, cs, SearchMode::All, no_prune).solutions),
              sorted(want));
    const auto first = search_tcp(net, cs, SearchMode::First);
    if (want.empty()) {
      EXPECT_TRUE(first.solutions.empty());
    } else {
      ASSERT_EQ(first.solutions.size(), 1u);
      EXPECT_NE(std::find(want.begin(), want.end(), first.solutions[0]), want.end());
    }
  }
  EXPECT_GT(multi, 0u);
  EXPECT_GT(pruned, 0u);
}

TEST(ConstructOrder, EveningDress) {
  const TcpNet net = fixtures::net("evening_dress.tcpnet");
  const auto order = construct_satisfying_order(net);
  ASSERT_EQ(order.size(), 8u);
  EXPECT_EQ(format_outcome(net, order.front()), "J=b,P=b,S=r");
  EXPECT_EQ(format_outcome(net, order.back()), "J=w,P=w,S=w");
  EXPECT_TRUE(order_satisfies(net, order));
  EXPECT_THROW(construct_satisfying_order(net, 4), Error);
  EXPECT_THROW(construct_satisfying_order(fixtures::net("abc_counterexample.tcpnet")),
               Error);
}

TEST(ConstructOrder, RanksEntailedPairsOnRandomNets) {
  std::mt19937 rng(73);
  for (int i = 0; i < 40; ++i) {
    gen::NetOptions opt;
    opt.variables = 5;
    const NetSpec spec = gen::random_acyclic_net(rng, opt);
    const TcpNet net = TcpNet::build(spec);
    const auto order = construct_satisfying_order(net);
    ASSERT_TRUE(order_satisfies(net, order)) << "net " << i;
    const ref::Closure c = ref::closure(ref::from_spec(spec));
    std::vector<std::size_t> rank(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[c.index(values(order[r]))] = r;
    for (std::size_t w = 0; w < c.outcomes.size(); ++w) {
      for (std::size_t b = 0; b < c.outcomes.size(); ++b) {
        if (c.reach[w][b]) EXPECT_LT(rank[b], rank[w]) << "net " << i;
      }
    }
  }
}
