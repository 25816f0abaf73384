#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace rdslab {

enum class Group : std::uint8_t { A = 0, B = 1 };

inline constexpr std::array<Group, 2> kGroups{Group::A, Group::B};

constexpr Group other(Group g) noexcept { return g == Group::A ? Group::B : Group::A; }
constexpr std::size_t index(Group g) noexcept { return static_cast<std::size_t>(g); }
constexpr char to_char(Group g) noexcept { return g == Group::A ? 'A' : 'B'; }

/// Parses "A" or "B"; anything else yields nullopt.
std::optional<Group> parse_group(std::string_view token) noexcept;

using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// One row of a 2x2 link-type / recruitment matrix.
struct TransitionRow {
  double to_a;
  double to_b;

  double to(Group g) const noexcept { return g == Group::A ? to_a : to_b; }
};

/// Row-stochastic matrix of link-type proportions. A row is nullopt when its
/// source group has no links (or recruitments) to normalise by.
struct RecruitmentMatrix {
  std::optional<TransitionRow> from_a;
  std::optional<TransitionRow> from_b;

  const std::optional<TransitionRow>& row(Group g) const noexcept {
    return g == Group::A ? from_a : from_b;
  }
  std::optional<double> s_ab() const noexcept {
    return from_a ? std::optional<double>(from_a->to_b) : std::nullopt;
  }
  std::optional<double> s_ba() const noexcept {
    return from_b ? std::optional<double>(from_b->to_a) : std::nullopt;
  }

  /// Normalises an unnormalised count/weight table row by row.
  static RecruitmentMatrix from_counts(const std::array<std::array<double, 2>, 2>& counts) noexcept;
};

/// Undirected simple graph with dense node ids, two-group labels and optional
/// symmetric link weights. Stored as CSR; immutable after construction.
class Network {
 public:
  Network() = default;

  /// Builds from an edge list. Throws ValidationError on self-loops,
  /// duplicate edges, out-of-range ids, non-positive weights or a group vector
  /// of the wrong length.
  Network(std::size_t node_count, std::span<const Edge> edges, std::vector<Group> groups,
          bool weighted = false);

  std::size_t node_count() const noexcept { return groups_.size(); }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }
  bool weighted() const noexcept { return !weights_.empty(); }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  /// Weights aligned with neighbors(v); empty for unweighted networks.
  std::span<const double> neighbor_weights(NodeId v) const noexcept {
    if (weights_.empty()) return {};
    return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  Group group(NodeId v) const noexcept { return groups_[v]; }
  const std::vector<Group>& groups() const noexcept { return groups_; }
  std::size_t group_size(Group g) const noexcept;

  bool has_edge(NodeId u, NodeId v) const noexcept;

  /// Edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  /// Copy with replaced labels; throws if the size differs.
  Network with_groups(std::vector<Group> groups) const;

  std::vector<std::size_t> degree_sequence() const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<double> weights_;
  std::vector<Group> groups_;
};

/// Population statistics that parameterise experiments.
///
/// `pair_counts[x][y]` counts ordered edge-endpoints (i, j) with i in x and j
/// in y; every undirected edge contributes one pair in each direction.
struct NetworkStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::array<std::array<std::uint64_t, 2>, 2> pair_counts{};

  double p_a = 0.0;
  RecruitmentMatrix s_star;
  std::optional<double> mean_degree_a;
  std::optional<double> mean_degree_b;
  double mean_degree = 0.0;
  /// 1 - s*_AB / P*_B; nullopt when a group is empty or s*_AB is undefined.
  std::optional<double> homophily;
  /// mean_degree_a / mean_degree_b; nullopt when either is missing or zero.
  std::optional<double> activity_ratio;
};

/// Throws InvalidArgument when N < 2.
NetworkStats compute_stats(const Network& net);

/// Node ids (ascending) of the largest connected component; ties go to the
/// component holding the smallest node id.
std::vector<NodeId> giant_component_nodes(const Network& net);

/// Induced subgraph on the giant component, ids re-densified in ascending
/// order of the original ids.
Network giant_component(const Network& net);

/// Induced subgraph on `nodes` (must be sorted, distinct).
Network induced_subgraph(const Network& net, std::span<const NodeId> nodes);

bool is_connected(const Network& net);

}  // namespace rdslab
