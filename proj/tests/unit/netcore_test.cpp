#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <deque>
#include <random>

#include "helpers.hpp"
#include "rdslab/errors.hpp"
#include "rdslab/network.hpp"

using namespace rdslab;
using namespace rdslab::testing;

TEST_CASE("triangle statistics by hand") {
  const NetworkStats s = compute_stats(triangle());
  // Ordered endpoints: A1->A2, A2->A1, A1->B, A2->B, B->A1, B->A2.
  CHECK(s.pair_counts[0][0] == 2);
  CHECK(s.pair_counts[0][1] == 2);
  CHECK(s.pair_counts[1][0] == 2);
  CHECK(s.pair_counts[1][1] == 0);
  CHECK(s.s_star.from_a->to_a == doctest::Approx(0.5));
  CHECK(*s.s_star.s_ab() == doctest::Approx(0.5));
  CHECK(*s.s_star.s_ba() == doctest::Approx(1.0));
  CHECK(*s.activity_ratio == doctest::Approx(1.0));
  CHECK(*s.homophily == doctest::Approx(-0.5));
  CHECK(s.p_a == doctest::Approx(2.0 / 3.0));
  CHECK(s.mean_degree == doctest::Approx(2.0));
}

TEST_CASE("bipartite network links only across groups") {
  // K_{2,3}: A = {0,1}, B = {2,3,4}
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId a = 0; a < 2; ++a)
    for (NodeId b = 2; b < 5; ++b) pairs.emplace_back(a, b);
  const NetworkStats s = compute_stats(make_network(5, pairs, groups_from("AABBB")));
  CHECK(*s.s_star.s_ab() == 1.0);
  CHECK(*s.s_star.s_ba() == 1.0);
  CHECK(*s.homophily == doctest::Approx(1.0 - 1.0 / 0.6));
}

TEST_CASE("homophily identity matches the ct row of the field data") {
  // s*_AB = 0.30 with P*_A = 0.388 gives 0.51; the published value is 0.50.
  const double h = 1.0 - 0.30 / (1.0 - 0.388);
  CHECK(h == doctest::Approx(0.50).epsilon(0.011));
}

TEST_CASE("empty group leaves homophily and activity ratio undefined") {
  const NetworkStats s = compute_stats(path(4));
  CHECK(s.p_a == 0.0);
  CHECK_FALSE(s.homophily.has_value());
  CHECK_FALSE(s.activity_ratio.has_value());
  CHECK_FALSE(s.s_star.from_a.has_value());
  CHECK(s.s_star.from_b.has_value());
}

TEST_CASE("compute_stats rejects a single node") {
  CHECK_THROWS_AS(compute_stats(Network(1, {}, {Group::A})), InvalidArgument);
}

TEST_CASE("construction rejects malformed edge lists") {
  const std::vector<Group> g(3, Group::A);
  CHECK_THROWS_AS(Network(3, std::vector<Edge>{{0, 0}}, g), ValidationError);
  CHECK_THROWS_AS(Network(3, std::vector<Edge>{{0, 1}, {1, 0}}, g), ValidationError);
  CHECK_THROWS_AS(Network(3, std::vector<Edge>{{0, 3}}, g), ValidationError);
  CHECK_THROWS_AS(Network(3, std::vector<Edge>{{0, 1, -1.0}}, g, true), ValidationError);
  CHECK_THROWS_AS(Network(4, std::vector<Edge>{{0, 1}}, g), ValidationError);
}

TEST_CASE("giant component") {
  SUBCASE("connected network is returned whole") {
    const Network net = triangle();
    const Network gc = giant_component(net);
    CHECK(gc.node_count() == 3);
    CHECK(gc.edge_count() == 3);
  }
  SUBCASE("tie goes to the component holding the smallest id") {
    // Triangles {0,1,2} and {3,4,5}, isolate 6. Labels mark the first one.
    const Network net =
        make_network(7, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}, groups_from("AAABBBB"));
    const auto nodes = giant_component_nodes(net);
    CHECK(nodes == std::vector<NodeId>{0, 1, 2});
    CHECK(giant_component(net).group_size(Group::A) == 3);
  }
  SUBCASE("path of four beats an edge of two") {
    const Network net = make_network(6, {{0, 1}, {2, 3}, {3, 4}, {4, 5}}, groups_from("AABBBB"));
    CHECK(giant_component_nodes(net) == std::vector<NodeId>{2, 3, 4, 5});
    const Network gc = giant_component(net);
    CHECK(gc.edge_count() == 3);
    CHECK(gc.degree_sequence() == std::vector<std::size_t>{1, 2, 2, 1});
  }
}

namespace {

bool bfs_connected(const Network& net) {
  if (net.node_count() == 0) return true;
  std::vector<char> seen(net.node_count(), 0);
  std::deque<NodeId> q{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    const NodeId v = q.front();
    q.pop_front();
    for (NodeId u : net.neighbors(v))
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        q.push_back(u);
      }
  }
  return count == net.node_count();
}

}  // namespace

TEST_CASE("properties over random graphs") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 60;
    const double p = std::uniform_real_distribution<>(0.0, 0.2)(rng);
    const double p_a = std::uniform_real_distribution<>(0.1, 0.9)(rng);
    Network net = random_network(rng, n, p, p_a);

    // Random extra components so giant_component has work to do.
    std::vector<Edge> edges = net.edges();
    const std::size_t extra = rng() % 5;
    for (std::size_t i = 0; i < extra; ++i)
      edges.push_back({static_cast<NodeId>(n + 2 * i), static_cast<NodeId>(n + 2 * i + 1)});
    std::vector<Group> g = net.groups();
    g.resize(n + 2 * extra, Group::B);
    net = Network(n + 2 * extra, edges, g);

    const NetworkStats s = compute_stats(net);
    std::uint64_t total = 0;
    for (auto& row : s.pair_counts)
      for (auto c : row) total += c;
    CHECK(total == 2 * net.edge_count());
    CHECK(s.pair_counts[0][1] == s.pair_counts[1][0]);

    for (NodeId v = 0; v < net.node_count(); ++v)
      for (NodeId u : net.neighbors(v)) {
        CHECK(u != v);
        CHECK(net.has_edge(u, v));
      }

    const NetworkStats again = compute_stats(net);
    CHECK(std::memcmp(&again.pair_counts, &s.pair_counts, sizeof s.pair_counts) == 0);
    CHECK(again.homophily == s.homophily);

    if (s.s_star.from_a) CHECK(s.s_star.from_a->to_a + s.s_star.from_a->to_b == doctest::Approx(1.0));
    if (s.homophily) CHECK(*s.homophily == doctest::Approx(1.0 - *s.s_star.s_ab() / (1.0 - s.p_a)));

    const Network gc = giant_component(net);
    CHECK(bfs_connected(gc));
    CHECK(is_connected(gc));
    CHECK(gc.node_count() >= n);
  }
}

TEST_CASE("random labels on a large graph give homophily near zero") {
  std::mt19937_64 rng(7);
  const Network net = random_network(rng, 2000, 0.005, 0.3);
  const NetworkStats s = compute_stats(net);
  CHECK(std::abs(*s.homophily) < 0.05);
}
