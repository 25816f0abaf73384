#include "rdslab/estimate.hpp"

#include <string>

#include "rdslab/errors.hpp"

namespace rdslab {

namespace {

void require_respondents(const EstimatorInput& in) {
  if (in.respondents.empty()) throw EstimationError("no non-seed respondents to estimate from");
}

std::array<std::size_t, 2> group_counts(const EstimatorInput& in) {
  std::array<std::size_t, 2> n{};
  for (const Observation& o : in.respondents) ++n[index(o.group)];
  return n;
}

}  // namespace

EstimatorInput estimator_input(const RdsSample& sample) {
  EstimatorInput in;
  for (const Respondent& r : sample.respondents) {
    if (r.is_seed()) continue;
    in.respondents.push_back({r.true_group, r.reported_degree, r.reported_n_a, r.reported_n_b});
    const Respondent& recruiter = sample.respondents[*r.recruiter];
    if (!recruiter.is_seed()) ++in.recruitments[index(recruiter.true_group)][index(r.true_group)];
  }
  return in;
}

double sample_proportion(const EstimatorInput& in) {
  require_respondents(in);
  return static_cast<double>(group_counts(in)[0]) / static_cast<double>(in.respondents.size());
}

RecruitmentMatrix observed_matrix(const EstimatorInput& in) {
  std::array<std::array<double, 2>, 2> counts{};
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) counts[x][y] = static_cast<double>(in.recruitments[x][y]);
  return RecruitmentMatrix::from_counts(counts);
}

double mean_degree_estimate(const EstimatorInput& in, Group x) {
  std::size_t n_x = 0;
  double inverse_sum = 0.0;
  for (const Observation& o : in.respondents) {
    if (o.group != x) continue;
    ++n_x;
    inverse_sum += 1.0 / static_cast<double>(o.degree);
  }
  if (n_x == 0) {
    throw EstimationError(std::string("no non-seed respondents in group ") + to_char(x));
  }
  return static_cast<double>(n_x) / inverse_sum;
}

ProportionEstimate rds_proportion(const EstimatorInput& in, const RecruitmentMatrix& s) {
  require_respondents(in);
  const auto n = group_counts(in);
  if (n[1] == 0) return 1.0;
  if (n[0] == 0) return 0.0;
  const auto s_ab = s.s_ab();
  const auto s_ba = s.s_ba();
  if (!s_ab || !s_ba) return std::nullopt;
  const double toward_a = *s_ba * mean_degree_estimate(in, Group::B);
  const double denominator = *s_ab * mean_degree_estimate(in, Group::A) + toward_a;
  if (denominator == 0.0) return std::nullopt;
  return toward_a / denominator;
}

ProportionEstimate rdsi(const EstimatorInput& in) { return rds_proportion(in, observed_matrix(in)); }

double rdsii(const EstimatorInput& in) {
  require_respondents(in);
  double weight_a = 0.0;
  double weight_all = 0.0;
  for (const Observation& o : in.respondents) {
    const double w = 1.0 / static_cast<double>(o.degree);
    weight_all += w;
    if (o.group == Group::A) weight_a += w;
  }
  return weight_a / weight_all;
}

RecruitmentMatrix ego_matrix(const EstimatorInput& in) {
  std::array<std::array<double, 2>, 2> sums{};
  std::array<std::size_t, 2> n{};
  for (const Observation& o : in.respondents) {
    const auto x = index(o.group);
    const double d = static_cast<double>(o.degree);
    sums[x][0] += static_cast<double>(o.n_a) / d;
    sums[x][1] += static_cast<double>(o.n_b) / d;
    ++n[x];
  }
  RecruitmentMatrix m;
  for (Group g : kGroups) {
    const auto x = index(g);
    if (n[x] == 0) continue;
    const double n_x = static_cast<double>(n[x]);
    (g == Group::A ? m.from_a : m.from_b) = TransitionRow{sums[x][0] / n_x, sums[x][1] / n_x};
  }
  return m;
}

ProportionEstimate rdsi_ego(const EstimatorInput& in) { return rds_proportion(in, ego_matrix(in)); }

EstimateSet estimate_all(const EstimatorInput& in) {
  require_respondents(in);
  EstimateSet e;
  e.sample_proportion = sample_proportion(in);
  e.s_observed = observed_matrix(in);
  e.s_ego = ego_matrix(in);
  e.rdsi = rds_proportion(in, e.s_observed);
  e.rdsii = rdsii(in);
  e.rdsi_ego = rds_proportion(in, e.s_ego);
  const auto n = group_counts(in);
  if (n[0] > 0) e.dbar_a = mean_degree_estimate(in, Group::A);
  if (n[1] > 0) e.dbar_b = mean_degree_estimate(in, Group::B);
  return e;
}

}  // namespace rdslab
