#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace rdslab {

struct MetricSummary {
  double mean = 0.0;
  double bias = 0.0;  ///< |mean - truth|
  double sd = 0.0;    ///< sample SD, m - 1 denominator
  double rmse = 0.0;  ///< sqrt(sum (est - truth)^2 / m)
  std::size_t n_defined = 0;
  std::size_t n_undefined = 0;
};

/// Undefined (nullopt) estimates are skipped and counted. Throws
/// EstimationError with fewer than two defined estimates.
MetricSummary compute_metrics(std::span<const std::optional<double>> estimates, double truth);
MetricSummary compute_metrics(std::span<const double> estimates, double truth);

/// Row-major m x k table of per-replication estimates (nullopt = undefined).
class EstimateTable {
 public:
  EstimateTable(std::size_t replications, std::size_t estimators)
      : k_(estimators), cells_(replications * estimators) {}

  std::size_t replications() const noexcept { return k_ == 0 ? 0 : cells_.size() / k_; }
  std::size_t estimators() const noexcept { return k_; }

  std::optional<double>& at(std::size_t rep, std::size_t est) { return cells_[rep * k_ + est]; }
  const std::optional<double>& at(std::size_t rep, std::size_t est) const { return cells_[rep * k_ + est]; }

  std::vector<std::optional<double>> column(std::size_t est) const;

 private:
  std::size_t k_;
  std::vector<std::optional<double>> cells_;
};

/// Share of replications in which each estimator lands closest to `truth`.
/// Exact ties split the replication's credit equally; undefined estimates
/// never win unless every estimator is undefined. Throws InvalidArgument for
/// fewer than two estimators or zero replications.
std::vector<double> compute_p_best(const EstimateTable& table, double truth);

}  // namespace rdslab
