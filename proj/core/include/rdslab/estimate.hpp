#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rdslab/network.hpp"
#include "rdslab/rds.hpp"

namespace rdslab {

/// What one respondent contributes to an estimator: own group plus the
/// reported degree and reported ego-network composition.
struct Observation {
  Group group;
  std::size_t degree;
  std::size_t n_a;
  std::size_t n_b;
};

/// The observable data estimators run on. Built from the non-seed part of a
/// sample, or directly by the bootstrap from a resampled chain.
struct EstimatorInput {
  std::vector<Observation> respondents;
  /// recruitments[x][y]: recruitments from group-x recruiters to group-y recruits.
  std::array<std::array<std::uint64_t, 2>, 2> recruitments{};
};

/// Non-seed respondents, and the recruitments made by non-seed recruiters.
EstimatorInput estimator_input(const RdsSample& sample);

/// Point estimate of P_A. nullopt marks the "undefined" outcome (no
/// cross-group links in the matrix used); it is never coerced to a number.
using ProportionEstimate = std::optional<double>;

struct EstimateSet {
  double sample_proportion = 0.0;
  ProportionEstimate rdsi;
  double rdsii = 0.0;
  ProportionEstimate rdsi_ego;
  RecruitmentMatrix s_observed;
  RecruitmentMatrix s_ego;
  std::optional<double> dbar_a;
  std::optional<double> dbar_b;
};

// Every function below throws EstimationError when the input has no
// respondents at all.

double sample_proportion(const EstimatorInput& in);
RecruitmentMatrix observed_matrix(const EstimatorInput& in);
/// Harmonic-mean degree n_X / sum(1/d_i); throws EstimationError when group X is absent.
double mean_degree_estimate(const EstimatorInput& in, Group x);
ProportionEstimate rdsi(const EstimatorInput& in);
double rdsii(const EstimatorInput& in);
/// Hansen-Hurwitz link-type proportions from reported ego compositions.
RecruitmentMatrix ego_matrix(const EstimatorInput& in);
ProportionEstimate rdsi_ego(const EstimatorInput& in);

/// P_A from a link-type matrix and group mean degrees. Single-group inputs
/// resolve to 0 or 1; nullopt when both cross terms vanish or a row is missing.
ProportionEstimate rds_proportion(const EstimatorInput& in, const RecruitmentMatrix& s);

EstimateSet estimate_all(const EstimatorInput& in);

inline double sample_proportion(const RdsSample& s) { return sample_proportion(estimator_input(s)); }
inline RecruitmentMatrix observed_matrix(const RdsSample& s) { return observed_matrix(estimator_input(s)); }
inline double mean_degree_estimate(const RdsSample& s, Group x) {
  return mean_degree_estimate(estimator_input(s), x);
}
inline ProportionEstimate rdsi(const RdsSample& s) { return rdsi(estimator_input(s)); }
inline double rdsii(const RdsSample& s) { return rdsii(estimator_input(s)); }
inline RecruitmentMatrix ego_matrix(const RdsSample& s) { return ego_matrix(estimator_input(s)); }
inline ProportionEstimate rdsi_ego(const RdsSample& s) { return rdsi_ego(estimator_input(s)); }
inline EstimateSet estimate_all(const RdsSample& s) { return estimate_all(estimator_input(s)); }

}  // namespace rdslab
