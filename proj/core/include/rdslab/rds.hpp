#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rdslab/network.hpp"
#include "rdslab/random.hpp"

namespace rdslab {

enum class SeedMode { uniform, degree_proportional };

struct RdsConfig {
  std::size_t n_seeds = 6;
  std::size_t coupons = 2;
  std::size_t target_size = 500;
  bool with_replacement = false;
  SeedMode seed_mode = SeedMode::uniform;
  double p_diff = 0.0;     ///< group-A neighbours weigh 1 + p_diff in recruitment
  double p_miss_a = 0.0;   ///< chance an A alter is left out of the reported degree
  double p_miss_b = 0.0;
  double p_err_ab = 0.0;   ///< chance a reported A alter is counted as B
  double p_err_ba = 0.0;
  bool reseed_on_dieout = true;

  void validate() const;
};

struct Respondent {
  NodeId node_id = 0;
  std::size_t wave = 0;
  /// Row index (into RdsSample::respondents) of the recruiter; nullopt for seeds.
  std::optional<std::size_t> recruiter;
  Group true_group = Group::B;
  std::size_t true_degree = 0;
  std::size_t reported_degree = 1;
  std::size_t reported_n_a = 0;
  std::size_t reported_n_b = 0;

  bool is_seed() const noexcept { return !recruiter.has_value(); }
};

struct RdsSample {
  std::vector<Respondent> respondents;
  /// (recruiter node id, recruit node id) in recruitment order.
  std::vector<std::pair<NodeId, NodeId>> recruitment_edges;
  /// Set when sampling stopped before target_size.
  bool incomplete = false;

  /// Checks the structural invariants that do not need a Network: reported
  /// counts add up, recruiters precede recruits one wave earlier, seeds are
  /// exactly the wave-0 rows. Throws ValidationError naming the row.
  void validate() const;
};

struct ReportedEgo {
  std::size_t degree;
  std::size_t n_a;
  std::size_t n_b;
};

/// Two-stage reporting error: alters are first dropped (p_miss by true group),
/// then survivors are misclassified (p_err). A respondent who drops every alter
/// still reports one: the recruiter if there is one, else a random neighbour.
ReportedEgo apply_report_errors(const Network& net, NodeId node, std::optional<NodeId> recruiter,
                                const RdsConfig& cfg, Rng& rng);

/// Distinct seeds, uniform or degree-proportional, drawn without replacement.
std::vector<NodeId> draw_seeds(const Network& net, std::size_t n_seeds, SeedMode mode, Rng& rng);

/// Simulates one RDS run. Seeding, recruitment and reporting each draw from
/// their own stream of `key`, so the error settings never change who is
/// recruited.
RdsSample run_rds(const Network& net, const RdsConfig& cfg, const StreamKey& key);

}  // namespace rdslab
