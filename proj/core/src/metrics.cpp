#include "rdslab/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rdslab/errors.hpp"

namespace rdslab {

MetricSummary compute_metrics(std::span<const std::optional<double>> estimates, double truth) {
  MetricSummary m;
  double sum = 0.0;
  double squared_error = 0.0;
  for (const auto& e : estimates) {
    if (!e) {
      ++m.n_undefined;
      continue;
    }
    ++m.n_defined;
    sum += *e;
    squared_error += (*e - truth) * (*e - truth);
  }
  if (m.n_defined < 2) {
    throw EstimationError("metrics need at least 2 defined estimates, got " + std::to_string(m.n_defined));
  }
  const double count = static_cast<double>(m.n_defined);
  m.mean = sum / count;
  m.bias = std::abs(m.mean - truth);
  double spread = 0.0;
  for (const auto& e : estimates)
    if (e) spread += (*e - m.mean) * (*e - m.mean);
  m.sd = std::sqrt(spread / (count - 1.0));
  m.rmse = std::sqrt(squared_error / count);
  return m;
}

MetricSummary compute_metrics(std::span<const double> estimates, double truth) {
  std::vector<std::optional<double>> wrapped(estimates.begin(), estimates.end());
  return compute_metrics(std::span<const std::optional<double>>(wrapped), truth);
}

std::vector<std::optional<double>> EstimateTable::column(std::size_t est) const {
  std::vector<std::optional<double>> out;
  out.reserve(replications());
  for (std::size_t r = 0; r < replications(); ++r) out.push_back(at(r, est));
  return out;
}

std::vector<double> compute_p_best(const EstimateTable& table, double truth) {
  const std::size_t k = table.estimators();
  const std::size_t m = table.replications();
  if (k < 2) throw InvalidArgument("p_best needs at least 2 estimators");
  if (m == 0) throw InvalidArgument("p_best needs at least one replication");

  std::vector<double> credit(k, 0.0);
  std::vector<double> distance(k);
  for (std::size_t r = 0; r < m; ++r) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < k; ++e) {
      const auto& v = table.at(r, e);
      distance[e] = v ? std::abs(*v - truth) : std::numeric_limits<double>::infinity();
      best = std::min(best, distance[e]);
    }
    std::size_t winners = 0;
    for (double d : distance) winners += d == best ? 1 : 0;
    for (std::size_t e = 0; e < k; ++e)
      if (distance[e] == best) credit[e] += 1.0 / static_cast<double>(winners);
  }
  for (double& c : credit) c /= static_cast<double>(m);
  return credit;
}

}  // namespace rdslab
