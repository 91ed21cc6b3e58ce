#include "fixtures.hpp"
#include "oracles.hpp"

#include "mincode/errors.hpp"
#include "mincode/network.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

namespace mincode {
namespace {

TEST(Network, ButterflyStructure) {
  const auto net = fixtures::butterfly();
  EXPECT_EQ(net.node_count(), 7u);
  EXPECT_EQ(net.edge_count(), 9u);
  EXPECT_EQ(net.receiver_count(), 2u);
  EXPECT_EQ(net.node(net.source()).id, "s");
  EXPECT_EQ(net.edge(0).id, "s->a");
  EXPECT_TRUE(net.is_acyclic());
  EXPECT_TRUE(net.has_integral_capacities());
  EXPECT_EQ(net.receiver_position(*net.find_node("t2")), 1u);
  EXPECT_FALSE(net.receiver_position(*net.find_node("m")));
}

TEST(Network, ParallelEdgesGetSuffixedIds) {
  const Network net({{"s", NodeKind::coding}, {"t", NodeKind::coding}},
                    {{"s", "t", Rational(1)}, {"s", "t", Rational(2)}, {"s", "t", Rational(1, 2)}}, "s", {"t"});
  EXPECT_EQ(net.edge(0).id, "s->t");
  EXPECT_EQ(net.edge(1).id, "s->t#2");
  EXPECT_EQ(net.edge(2).id, "s->t#3");
  EXPECT_EQ(max_flow(net, 0), Rational(7, 2));
}

TEST(Network, ValidationNamesTheEntity) {
  const std::vector<Node> nodes{{"s", NodeKind::coding}, {"t", NodeKind::coding}};
  auto message = [&](const std::vector<EdgeSpec>& edges, const std::string& source,
                     const std::vector<std::string>& receivers) {
    try {
      Network(nodes, edges, source, receivers);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message({{"s", "x", Rational(1)}}, "s", {"t"}).find("x"), std::string::npos);
  EXPECT_NE(message({{"s", "s", Rational(1)}}, "s", {"t"}), "");
  EXPECT_NE(message({{"s", "t", Rational(-1)}}, "s", {"t"}).find("s->t"), std::string::npos);
  EXPECT_NE(message({{"s", "t", Rational(1)}}, "s", {"s"}), "");
  EXPECT_NE(message({{"s", "t", Rational(1)}}, "s", {}), "");
  EXPECT_NE(message({{"s", "t", Rational(1)}}, "q", {"t"}).find("q"), std::string::npos);
  EXPECT_NE(message({{"s", "t", Rational(1)}}, "s", {"t", "t"}).find("t"), std::string::npos);
}

TEST(Network, ParsesDocumentAndRoundTrips) {
  const auto net = parse_network(fixtures::read_text(fixtures::data_path("butterfly.json")));
  EXPECT_EQ(net.edge_count(), 9u);
  const auto again = parse_network(write_network(net));
  ASSERT_EQ(again.edge_count(), net.edge_count());
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    EXPECT_EQ(again.edge(e).id, net.edge(e).id);
    EXPECT_EQ(again.edge(e).capacity, net.edge(e).capacity);
  }
}

TEST(Network, ParseErrorsCarryLocus) {
  auto locus = [](const std::string& text) {
    try {
      parse_network(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(locus("{\n\"nodes\": [\n,]}").find("line 3"), std::string::npos);
  EXPECT_NE(locus(R"({"nodes": [], "edges": [], "source": "s"})").find("receivers"), std::string::npos);
  EXPECT_NE(locus(R"({"nodes": [{"id": "s", "kind": "magic"}], "edges": [], "source": "s", "receivers": []})")
                .find("nodes[0].kind"),
            std::string::npos);
  EXPECT_NE(locus(R"({"nodes": [{"id": "s"}, {"id": "t"}], "edges": [{"from": "s", "to": "t", "capacity": "1/0"}],
                      "source": "s", "receivers": ["t"]})")
                .find("edges[0].capacity"),
            std::string::npos);
}

TEST(Network, RationalCapacitiesParse) {
  const auto net = parse_network(R"({"nodes": [{"id": "s"}, {"id": "t", "kind": "routing"}],
    "edges": [{"from": "s", "to": "t", "capacity": "5/3", "id": "main"}], "source": "s", "receivers": ["t"]})");
  EXPECT_EQ(net.edge(0).capacity, Rational(5, 3));
  EXPECT_EQ(net.edge(0).id, "main");
  EXPECT_EQ(net.routing_nodes(), std::set<std::size_t>{1});
  EXPECT_FALSE(net.has_integral_capacities());
}

TEST(MaxFlow, ButterflyIsTwo) {
  const auto net = fixtures::butterfly();
  EXPECT_EQ(max_flow(net, 0), Rational(2));
  EXPECT_EQ(max_flow(net, 1), Rational(2));
  EXPECT_EQ(multicast_capacity(net), Rational(2));
}

TEST(MaxFlow, MatchesExhaustiveCutsOnRandomNetworks) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto net = random_network(seed, 9, 1 + seed % 3);
    for (std::size_t k = 0; k < net.receiver_count(); ++k)
      EXPECT_EQ(max_flow(net, k), oracle::min_cut(net, k)) << "seed " << seed << " receiver " << k;
  }
}

TEST(MaxFlow, MatchesCutsWithFractionalCapacities) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto net = random_network(seed, 8, 2);
    for (std::size_t e = 0; e < net.edge_count(); e += 2)
      net = net.with_capacity(e, net.edge(e).capacity / Rational(1 + static_cast<int>(e % 3)));
    EXPECT_EQ(multicast_capacity(net), oracle::capacity_by_cuts(net)) << "seed " << seed;
  }
}

TEST(MaxFlow, CapacityIsMonotoneInEdgeCapacity) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto net = random_network(seed, 8, 2);
    const auto base = multicast_capacity(net);
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
      EXPECT_GE(multicast_capacity(net.with_capacity(e, net.edge(e).capacity + 1)), base);
      EXPECT_LE(multicast_capacity(net.without_edge(e)), base);
    }
  }
}

TEST(RandomNetwork, DeterministicAcyclicReachable) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto a = random_network(seed, 10, 3);
    const auto b = random_network(seed, 10, 3);
    EXPECT_EQ(write_network(a), write_network(b));
    EXPECT_TRUE(a.is_acyclic());
    EXPECT_GE(multicast_capacity(a), Rational(1));
    EXPECT_LE(a.node_count(), 10u);
    for (const auto& e : a.edges()) {
      EXPECT_GE(e.capacity, Rational(1));
      EXPECT_LE(e.capacity, Rational(3));
    }
    EXPECT_TRUE(a.in_edges(a.source()).empty());
  }
}

TEST(Decomposition, PathsAreDisjointAndReachReceivers) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto net = random_network(seed, 9, 1 + seed % 3);
    const auto h = numerator(multicast_capacity(net)).convert_to<std::int64_t>();
    const auto [expansion, paths] = expand_and_decompose(net, h);
    ASSERT_EQ(paths.paths.size(), net.receiver_count());
    for (std::size_t k = 0; k < net.receiver_count(); ++k) {
      ASSERT_EQ(paths.paths[k].size(), static_cast<std::size_t>(h));
      std::set<std::size_t> used;
      for (const auto& path : paths.paths[k]) {
        ASSERT_FALSE(path.empty());
        EXPECT_EQ(net.edge(expansion.edge_of_unit[path.front()]).tail, net.source());
        EXPECT_EQ(net.edge(expansion.edge_of_unit[path.back()]).head, net.receiver_node(k));
        for (std::size_t u = 0; u + 1 < path.size(); ++u)
          EXPECT_EQ(net.edge(expansion.edge_of_unit[path[u]]).head, net.edge(expansion.edge_of_unit[path[u + 1]]).tail);
        for (std::size_t unit : path) EXPECT_TRUE(used.insert(unit).second) << "unit reused, seed " << seed;
      }
    }
  }
}

TEST(Decomposition, RejectsInfeasibleOrFractional) {
  const auto net = fixtures::butterfly();
  EXPECT_THROW(expand_and_decompose(net, 3), InfeasibleRateError);
  EXPECT_THROW(expand_and_decompose(net.scaled(Rational(1, 2)), 1), NonIntegralError);
}

}  // namespace
}  // namespace mincode
