#include "rdslab/network.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "rdslab/errors.hpp"

namespace rdslab {

std::optional<Group> parse_group(std::string_view token) noexcept {
  if (token == "A") return Group::A;
  if (token == "B") return Group::B;
  return std::nullopt;
}

RecruitmentMatrix RecruitmentMatrix::from_counts(
    const std::array<std::array<double, 2>, 2>& counts) noexcept {
  RecruitmentMatrix m;
  for (Group g : kGroups) {
    const auto& row = counts[index(g)];
    const double total = row[0] + row[1];
    if (total <= 0.0) continue;
    TransitionRow r{row[0] / total, row[1] / total};
    (g == Group::A ? m.from_a : m.from_b) = r;
  }
  return m;
}

Network::Network(std::size_t node_count, std::span<const Edge> edges, std::vector<Group> groups,
                 bool weighted)
    : groups_(std::move(groups)) {
  if (groups_.size() != node_count) {
    throw ValidationError("group vector has " + std::to_string(groups_.size()) +
                          " entries for " + std::to_string(node_count) + " nodes");
  }
  std::vector<std::size_t> deg(node_count, 0);
  for (const Edge& e : edges) {
    if (e.u >= node_count || e.v >= node_count) {
      throw ValidationError("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                            " references a node outside 0.." + std::to_string(node_count));
    }
    if (e.u == e.v) throw ValidationError("self-loop at node " + std::to_string(e.u));
    if (weighted && !(e.weight > 0.0)) {
      throw ValidationError("non-positive weight on edge " + std::to_string(e.u) + "-" +
                            std::to_string(e.v));
    }
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(node_count + 1, 0);
  for (std::size_t v = 0; v < node_count; ++v) offsets_[v + 1] = offsets_[v] + deg[v];

  std::vector<std::pair<NodeId, double>> slots(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges) {
    slots[cursor[e.u]++] = {e.v, e.weight};
    slots[cursor[e.v]++] = {e.u, e.weight};
  }
  targets_.resize(slots.size());
  if (weighted) weights_.resize(slots.size());
  for (std::size_t v = 0; v < node_count; ++v) {
    auto first = slots.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = slots.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last, [](const auto& a, const auto& b) { return a.first < b.first; });
    auto dup = std::adjacent_find(first, last,
                                  [](const auto& a, const auto& b) { return a.first == b.first; });
    if (dup != last) {
      throw ValidationError("duplicate edge " + std::to_string(v) + "-" +
                            std::to_string(dup->first));
    }
    for (auto it = first; it != last; ++it) {
      const auto pos = static_cast<std::size_t>(it - slots.begin());
      targets_[pos] = it->first;
      if (weighted) weights_[pos] = it->second;
    }
  }
}

std::size_t Network::group_size(Group g) const noexcept {
  return static_cast<std::size_t>(std::count(groups_.begin(), groups_.end(), g));
}

bool Network::has_edge(NodeId u, NodeId v) const noexcept {
  if (u >= node_count() || v >= node_count()) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Network::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    auto nb = neighbors(u);
    auto w = neighbor_weights(u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] > u) out.push_back({u, nb[k], w.empty() ? 1.0 : w[k]});
    }
  }
  return out;
}

Network Network::with_groups(std::vector<Group> groups) const {
  if (groups.size() != node_count()) {
    throw InvalidArgument("with_groups: expected " + std::to_string(node_count()) + " labels");
  }
  Network copy = *this;
  copy.groups_ = std::move(groups);
  return copy;
}

std::vector<std::size_t> Network::degree_sequence() const {
  std::vector<std::size_t> d(node_count());
  for (NodeId v = 0; v < node_count(); ++v) d[v] = degree(v);
  return d;
}

NetworkStats compute_stats(const Network& net) {
  const std::size_t n = net.node_count();
  if (n < 2) throw InvalidArgument("compute_stats needs at least 2 nodes");

  NetworkStats s;
  s.node_count = n;
  s.edge_count = net.edge_count();
  std::array<std::uint64_t, 2> degree_sum{};
  for (NodeId v = 0; v < n; ++v) {
    const Group g = net.group(v);
    (g == Group::A ? s.n_a : s.n_b) += 1;
    degree_sum[index(g)] += net.degree(v);
    for (NodeId u : net.neighbors(v)) ++s.pair_counts[index(g)][index(net.group(u))];
  }

  s.p_a = static_cast<double>(s.n_a) / static_cast<double>(n);
  std::array<std::array<double, 2>, 2> counts{};
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) counts[x][y] = static_cast<double>(s.pair_counts[x][y]);
  s.s_star = RecruitmentMatrix::from_counts(counts);
  s.mean_degree = static_cast<double>(degree_sum[0] + degree_sum[1]) / static_cast<double>(n);
  if (s.n_a > 0) s.mean_degree_a = static_cast<double>(degree_sum[0]) / static_cast<double>(s.n_a);
  if (s.n_b > 0) s.mean_degree_b = static_cast<double>(degree_sum[1]) / static_cast<double>(s.n_b);

  if (s.n_a > 0 && s.n_b > 0) {
    if (auto s_ab = s.s_star.s_ab()) {
      const double p_b = 1.0 - s.p_a;
      s.homophily = 1.0 - *s_ab / p_b;
    }
    if (*s.mean_degree_b > 0.0 && *s.mean_degree_a > 0.0) {
      s.activity_ratio = *s.mean_degree_a / *s.mean_degree_b;
    }
  }
  return s;
}

namespace {

// Component label per node; labels are assigned in order of smallest member.
std::vector<std::size_t> component_labels(const Network& net, std::vector<std::size_t>& sizes) {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(net.node_count(), kUnset);
  std::queue<NodeId> frontier;
  for (NodeId start = 0; start < net.node_count(); ++start) {
    if (label[start] != kUnset) continue;
    const std::size_t id = sizes.size();
    sizes.push_back(0);
    label[start] = id;
    frontier.push(start);
    while (!frontier.empty()) {
      NodeId v = frontier.front();
      frontier.pop();
      ++sizes[id];
      for (NodeId u : net.neighbors(v)) {
        if (label[u] == kUnset) {
          label[u] = id;
          frontier.push(u);
        }
      }
    }
  }
  return label;
}

}  // namespace

std::vector<NodeId> giant_component_nodes(const Network& net) {
  std::vector<std::size_t> sizes;
  auto label = component_labels(net, sizes);
  if (sizes.empty()) return {};
  // max_element returns the first maximum, i.e. the one with the smallest id.
  const auto giant = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<NodeId> nodes;
  nodes.reserve(sizes[giant]);
  for (NodeId v = 0; v < net.node_count(); ++v)
    if (label[v] == giant) nodes.push_back(v);
  return nodes;
}

Network induced_subgraph(const Network& net, std::span<const NodeId> nodes) {
  constexpr auto kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> remap(net.node_count(), kAbsent);
  for (std::size_t k = 0; k < nodes.size(); ++k) remap[nodes[k]] = static_cast<NodeId>(k);

  std::vector<Edge> edges;
  std::vector<Group> groups;
  groups.reserve(nodes.size());
  for (NodeId v : nodes) {
    groups.push_back(net.group(v));
    auto nb = net.neighbors(v);
    auto w = net.neighbor_weights(v);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] > v && remap[nb[k]] != kAbsent) {
        edges.push_back({remap[v], remap[nb[k]], w.empty() ? 1.0 : w[k]});
      }
    }
  }
  return Network(nodes.size(), edges, std::move(groups), net.weighted());
}

Network giant_component(const Network& net) {
  auto nodes = giant_component_nodes(net);
  return induced_subgraph(net, nodes);
}

bool is_connected(const Network& net) {
  if (net.node_count() == 0) return true;
  return giant_component_nodes(net).size() == net.node_count();
}

}  // namespace rdslab
