#include "rdslab/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rdslab/errors.hpp"

namespace rdslab {

std::string_view to_string(BootstrapMethod m) noexcept {
  switch (m) {
    case BootstrapMethod::origin: return "origin";
    case BootstrapMethod::ego1: return "ego1";
    case BootstrapMethod::ego2: return "ego2";
  }
  return "?";
}

std::optional<BootstrapMethod> parse_bootstrap_method(std::string_view s) noexcept {
  if (s == "origin") return BootstrapMethod::origin;
  if (s == "ego1") return BootstrapMethod::ego1;
  if (s == "ego2") return BootstrapMethod::ego2;
  return std::nullopt;
}

void BootstrapConfig::validate() const {
  if (replicates < 2) throw InvalidArgument("bootstrap needs at least 2 replicates");
  if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("confidence level must lie in (0, 1)");
}

ConfidenceInterval interval_from_sorted(std::span<const double> sorted, double level) {
  if (sorted.empty()) throw InvalidArgument("no replicate estimates");
  const std::size_t r = sorted.size();
  // The small slack keeps e.g. 1000 * (1 - 0.95) / 2 at 25 rather than 25.000000000000004.
  const double tail = static_cast<double>(r) * (1.0 - level) / 2.0;
  auto dropped = static_cast<std::size_t>(std::ceil(tail - 1e-9));
  dropped = std::min(dropped, (r - 1) / 2);
  return {sorted[dropped], sorted[r - 1 - dropped], level};
}

namespace {

struct Member {
  Observation obs;
  Group recruiter_group;
};

class ChainResampler {
 public:
  ChainResampler(const RdsSample& sample, BootstrapMethod method) : method_(method) {
    for (const Respondent& r : sample.respondents) {
      if (r.is_seed()) continue;
      const Group recruiter = sample.respondents[*r.recruiter].true_group;
      members_.push_back({{r.true_group, r.reported_degree, r.reported_n_a, r.reported_n_b}, recruiter});
    }
    if (members_.empty()) throw EstimationError("bootstrap needs at least one non-seed respondent");
    for (std::size_t k = 0; k < members_.size(); ++k) {
      const Member& m = members_[k];
      by_recruiter_[index(m.recruiter_group)].push_back(k);
      by_group_[index(m.obs.group)].push_back(k);
    }
    EstimatorInput original;
    for (const Member& m : members_) original.respondents.push_back(m.obs);
    ego_ = ego_matrix(original);
  }

  // Draws one replicate chain of the original length and estimates it.
  ProportionEstimate replicate(Rng& rng, std::size_t& fallbacks) const {
    const std::size_t n = members_.size();
    EstimatorInput chain;
    chain.respondents.reserve(n);
    std::size_t current = uniform_index(rng, n);
    chain.respondents.push_back(members_[current].obs);
    while (chain.respondents.size() < n) {
      const Group g = members_[current].obs.group;
      const std::vector<std::size_t>* pool = nullptr;
      if (method_ == BootstrapMethod::ego2) {
        const auto& row = ego_.row(g);
        const double cross = row ? row->to(other(g)) : 0.0;
        const Group next = bernoulli(rng, cross) ? other(g) : g;
        pool = &by_group_[index(next)];
      } else {
        pool = &by_recruiter_[index(g)];
      }
      std::size_t next;
      if (pool->empty()) {
        ++fallbacks;
        next = uniform_index(rng, n);
      } else {
        next = (*pool)[uniform_index(rng, pool->size())];
      }
      ++chain.recruitments[index(g)][index(members_[next].obs.group)];
      chain.respondents.push_back(members_[next].obs);
      current = next;
    }
    return method_ == BootstrapMethod::origin ? rdsi(chain) : rdsi_ego(chain);
  }

 private:
  BootstrapMethod method_;
  std::vector<Member> members_;
  std::array<std::vector<std::size_t>, 2> by_recruiter_;
  std::array<std::vector<std::size_t>, 2> by_group_;
  RecruitmentMatrix ego_;
};

}  // namespace

BootstrapResult bootstrap_ci(const RdsSample& sample, const BootstrapConfig& cfg, const StreamKey& key) {
  cfg.validate();
  const ChainResampler resampler(sample, cfg.method);
  BootstrapResult result;
  result.estimates.reserve(cfg.replicates);
  const std::size_t max_attempts = 2 * cfg.replicates;
  for (std::size_t attempt = 0; result.estimates.size() < cfg.replicates; ++attempt) {
    if (attempt >= max_attempts) {
      throw EstimationError("bootstrap: more than " + std::to_string(cfg.replicates) +
                            " replicate estimates were undefined");
    }
    Rng rng = key.child(attempt).stream(StreamTag::bootstrap);
    if (auto est = resampler.replicate(rng, result.fallback_draws)) {
      result.estimates.push_back(*est);
    } else {
      ++result.redraws;
    }
  }
  std::sort(result.estimates.begin(), result.estimates.end());
  result.ci = interval_from_sorted(result.estimates, cfg.level);
  return result;
}

CoverageResult coverage(const Network& net, const RdsConfig& rds_cfg, const BootstrapConfig& bs_cfg,
                        std::size_t n_samples, const StreamKey& key) {
  if (n_samples < 1) throw InvalidArgument("coverage needs at least one sample");
  const double truth =
      static_cast<double>(net.group_size(Group::A)) / static_cast<double>(net.node_count());
  CoverageResult out;
  out.samples = n_samples;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const StreamKey sample_key = key.child(i);
    const RdsSample sample = run_rds(net, rds_cfg, sample_key);
    const BootstrapResult bs = bootstrap_ci(sample, bs_cfg, sample_key.child(0xb007));
    out.fallback_draws += bs.fallback_draws;
    if (bs.ci.contains(truth)) ++out.covered;
  }
  out.coverage = static_cast<double>(out.covered) / static_cast<double>(n_samples);
  return out;
}

}  // namespace rdslab
