#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "rdslab/network.hpp"
#include "rdslab/random.hpp"

namespace rdslab::testing {

inline Network make_network(std::size_t n, std::vector<std::pair<NodeId, NodeId>> pairs, std::vector<Group> groups) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, 1.0});
  return Network(n, edges, std::move(groups));
}

inline std::vector<Group> groups_from(const char* labels) {
  std::vector<Group> out;
  for (const char* c = labels; *c; ++c) out.push_back(*c == 'A' ? Group::A : Group::B);
  return out;
}

// A1-A2, A1-B, A2-B
inline Network triangle() { return make_network(3, {{0, 1}, {0, 2}, {1, 2}}, groups_from("AAB")); }

inline Network path(std::size_t n, const char* labels = nullptr) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId v = 0; v + 1 < n; ++v) pairs.emplace_back(v, v + 1);
  return make_network(n, pairs, labels ? groups_from(labels) : std::vector<Group>(n, Group::B));
}

inline Network complete(std::size_t n, std::size_t n_a) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<Group> g(n, Group::B);
  for (std::size_t i = 0; i < n_a; ++i) g[i] = Group::A;
  return make_network(n, pairs, g);
}

// Erdos-Renyi style generator for property tests: G(n, p) plus a spanning
// path so the result is connected, random labels with probability p_a.
inline Network random_network(std::mt19937_64& rng, std::size_t n, double p, double p_a) {
  std::bernoulli_distribution edge(p), label(p_a);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<NodeId> order(n);
  for (NodeId i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::set<std::pair<NodeId, NodeId>> seen;
  auto add = [&](NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    if (seen.insert({u, v}).second) pairs.emplace_back(u, v);
  };
  for (std::size_t i = 0; i + 1 < n; ++i) add(order[i], order[i + 1]);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (edge(rng)) add(u, v);
  std::vector<Group> g(n);
  for (auto& x : g) x = label(rng) ? Group::A : Group::B;
  return make_network(n, pairs, g);
}

}  // namespace rdslab::testing
