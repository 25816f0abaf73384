#pragma once

#include <cstddef>
#include <cstdint>

#include "rdslab/network.hpp"
#include "rdslab/random.hpp"

namespace rdslab {

/// Parameters of the weighted KOSKK network-evolution model.
struct KoskkParams {
  std::size_t n = 10000;
  double w0 = 1.0;            ///< weight of a freshly created link
  double p_r = 0.0005;        ///< global attachment probability
  double p_d = 0.001;         ///< node deletion probability
  double p_delta = 0.0;       ///< triadic-closure probability
  double delta = 0.6;         ///< weight reinforcement per local step
  std::uint64_t steps = 100'000'000;
  double target_mean_degree = 10.0;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;

  /// Step count that keeps per-node churn equal to 1e8 steps at N = 10000.
  static std::uint64_t scaled_steps(std::size_t n) noexcept;
};

struct TuneTargets {
  double target_p_a = 0.3;
  double target_w = 1.0;
  double target_h = 0.0;
  double tolerance = 0.02;
  std::uint64_t max_iterations = 10'000'000;
};

/// Evolves an empty graph for `params.steps` iterations of local attachment,
/// global attachment and node deletion, then links every node outside the
/// giant component to it with one w0 edge. All nodes are labelled B.
Network koskk_generate(const KoskkParams& params, Rng& rng);

struct CalibrationOptions {
  /// Pilot graph size; mean degree barely depends on N, so pilots run on at
  /// most this many nodes.
  std::size_t pilot_nodes = 1000;
  std::uint64_t pilot_steps = 0;   ///< 0 means steps scaled to the pilot size
  std::size_t pilots = 3;
  double relative_tolerance = 0.05;
  std::size_t max_bisections = 30;
};

/// Bisects p_delta on [0, 1] until averaged pilot runs reach
/// params.target_mean_degree within the relative tolerance. Pilots reuse the
/// same random streams at every probe so the response is smooth in p_delta.
/// Throws CalibrationError when the target lies outside the bracket.
double calibrate_p_delta(const KoskkParams& params, Rng& rng, const CalibrationOptions& options = {});

/// Labels exactly round(p_a * N) uniformly chosen nodes A, the rest B.
Network assign_groups(const Network& net, double p_a, Rng& rng);

/// Swaps labels of random (A, B) pairs, moving the higher-degree node towards
/// the side that brings the activity ratio closer to targets.target_w.
/// Throws TuningError (carrying the best ratio seen) after max_iterations.
Network tune_activity_ratio(const Network& net, const TuneTargets& targets, Rng& rng);

/// Degree-preserving double-edge rewiring between within-group and
/// cross-group links until homophily is within tolerance of targets.target_h.
/// Throws TuningError (carrying the best homophily seen) after max_iterations.
Network tune_homophily(const Network& net, const TuneTargets& targets, Rng& rng);

}  // namespace rdslab
