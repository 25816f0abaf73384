#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rdslab/estimate.hpp"
#include "rdslab/network.hpp"
#include "rdslab/random.hpp"
#include "rdslab/rds.hpp"

namespace rdslab {

/// origin: chain resampled by recruiter group, estimated with RDSI.
/// ego1:   same chain resampling, estimated with RDSI-ego.
/// ego2:   transitions driven by the ego link-type matrix, estimated with RDSI-ego.
enum class BootstrapMethod { origin, ego1, ego2 };

std::string_view to_string(BootstrapMethod m) noexcept;
std::optional<BootstrapMethod> parse_bootstrap_method(std::string_view s) noexcept;

struct BootstrapConfig {
  BootstrapMethod method = BootstrapMethod::ego2;
  std::size_t replicates = 1000;
  double level = 0.95;

  void validate() const;
};

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0;

  bool contains(double x) const noexcept { return lower <= x && x <= upper; }
};

/// Drops ceil(R * (1 - level) / 2) order statistics from each tail of the
/// sorted estimates and returns the extreme survivors.
ConfidenceInterval interval_from_sorted(std::span<const double> sorted, double level);

struct BootstrapResult {
  /// Replicate estimates in ascending order.
  std::vector<double> estimates;
  ConfidenceInterval ci;
  /// Steps where the required partition was empty and the union was used.
  std::size_t fallback_draws = 0;
  /// Replicates discarded because their estimate was undefined.
  std::size_t redraws = 0;

  ConfidenceInterval interval(double level) const { return interval_from_sorted(estimates, level); }
};

/// Chain bootstrap over the non-seed respondents of `sample`. Replicate r uses
/// a stream derived from (key, r), so the result does not depend on the order
/// replicates are evaluated in. Throws EstimationError when more than R
/// replicates come out undefined.
BootstrapResult bootstrap_ci(const RdsSample& sample, const BootstrapConfig& cfg, const StreamKey& key);

struct CoverageResult {
  double coverage = 0.0;
  std::size_t samples = 0;
  std::size_t covered = 0;
  std::size_t fallback_draws = 0;
};

/// Fraction of `n_samples` independent RDS samples whose bootstrap CI holds
/// the network's true P_A.
CoverageResult coverage(const Network& net, const RdsConfig& rds_cfg, const BootstrapConfig& bs_cfg,
                        std::size_t n_samples, const StreamKey& key);

}  // namespace rdslab
