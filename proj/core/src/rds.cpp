#include "rdslab/rds.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "rdslab/errors.hpp"

namespace rdslab {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

// Sequential weighted draws without replacement; returns positions into `weights`.
std::vector<std::size_t> draw_without_replacement(std::vector<double> weights, std::size_t count,
                                                  Rng& rng) {
  std::vector<std::size_t> picked;
  count = std::min(count, weights.size());
  picked.reserve(count);
  while (picked.size() < count) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0)) break;
    double r = uniform01(rng) * total;
    std::size_t chosen = weights.size();
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (weights[k] <= 0.0) continue;
      chosen = k;
      r -= weights[k];
      if (r < 0.0) break;
    }
    picked.push_back(chosen);
    weights[chosen] = 0.0;
  }
  return picked;
}

Group misreport(Group g, const RdsConfig& cfg, Rng& rng) {
  const double p = g == Group::A ? cfg.p_err_ab : cfg.p_err_ba;
  return bernoulli(rng, p) ? other(g) : g;
}

}  // namespace

void RdsConfig::validate() const {
  if (n_seeds < 1) throw InvalidArgument("n_seeds must be positive");
  if (target_size < n_seeds) throw InvalidArgument("target_size must be at least n_seeds");
  if (!(p_diff >= 0.0)) throw InvalidArgument("p_diff must be non-negative");
  for (double p : {p_miss_a, p_miss_b, p_err_ab, p_err_ba})
    if (!is_probability(p)) throw InvalidArgument("reporting-error probabilities must lie in [0, 1]");
}

void RdsSample::validate() const {
  for (std::size_t row = 0; row < respondents.size(); ++row) {
    const Respondent& r = respondents[row];
    auto fail = [&](const std::string& why) {
      return ValidationError("respondent row " + std::to_string(row) + ": " + why);
    };
    if (r.reported_degree < 1) throw fail("reported degree must be at least 1");
    if (r.reported_n_a + r.reported_n_b != r.reported_degree)
      throw fail("reported_n_A + reported_n_B differs from reported_degree");
    if (r.is_seed() != (r.wave == 0)) throw fail("seeds must be exactly the wave-0 respondents");
    if (r.recruiter) {
      if (*r.recruiter >= row) throw fail("recruiter does not appear earlier in the sample");
      if (respondents[*r.recruiter].wave + 1 != r.wave)
        throw fail("wave is not one more than the recruiter's wave");
    }
  }
}

ReportedEgo apply_report_errors(const Network& net, NodeId node, std::optional<NodeId> recruiter,
                                const RdsConfig& cfg, Rng& rng) {
  ReportedEgo out{0, 0, 0};
  for (NodeId alter : net.neighbors(node)) {
    const Group truth = net.group(alter);
    const double p_miss = truth == Group::A ? cfg.p_miss_a : cfg.p_miss_b;
    if (bernoulli(rng, p_miss)) continue;
    ++out.degree;
    (misreport(truth, cfg, rng) == Group::A ? out.n_a : out.n_b) += 1;
  }
  if (out.degree == 0) {
    Group truth = net.group(node);
    if (recruiter) {
      truth = net.group(*recruiter);
    } else if (net.degree(node) > 0) {
      auto nb = net.neighbors(node);
      truth = net.group(nb[uniform_index(rng, nb.size())]);
    }
    out.degree = 1;
    (misreport(truth, cfg, rng) == Group::A ? out.n_a : out.n_b) = 1;
  }
  return out;
}

std::vector<NodeId> draw_seeds(const Network& net, std::size_t n_seeds, SeedMode mode, Rng& rng) {
  const std::size_t n = net.node_count();
  if (n_seeds > n) {
    throw InvalidArgument("cannot draw " + std::to_string(n_seeds) + " seeds from " +
                          std::to_string(n) + " nodes");
  }
  std::vector<double> weights(n, 1.0);
  if (mode == SeedMode::degree_proportional)
    for (NodeId v = 0; v < n; ++v) weights[v] = static_cast<double>(net.degree(v));
  auto picked = draw_without_replacement(std::move(weights), n_seeds, rng);
  if (picked.size() < n_seeds) {
    // Zero-degree nodes are never drawn proportionally; fill up uniformly.
    std::vector<double> rest(n, 1.0);
    for (auto p : picked) rest[p] = 0.0;
    auto extra = draw_without_replacement(std::move(rest), n_seeds - picked.size(), rng);
    picked.insert(picked.end(), extra.begin(), extra.end());
  }
  return {picked.begin(), picked.end()};
}

RdsSample run_rds(const Network& net, const RdsConfig& cfg, const StreamKey& key) {
  cfg.validate();
  Rng seeding = key.stream(StreamTag::seeding);
  Rng recruiting = key.stream(StreamTag::recruitment);
  Rng reporting = key.stream(StreamTag::reporting);

  RdsSample sample;
  sample.respondents.reserve(cfg.target_size);
  std::vector<char> sampled(net.node_count(), 0);
  std::size_t unsampled = net.node_count();
  std::deque<std::size_t> queue;

  auto enroll = [&](NodeId v, std::optional<std::size_t> recruiter_row) {
    Respondent r;
    r.node_id = v;
    r.recruiter = recruiter_row;
    r.wave = recruiter_row ? sample.respondents[*recruiter_row].wave + 1 : 0;
    r.true_group = net.group(v);
    r.true_degree = net.degree(v);
    std::optional<NodeId> recruiter_node;
    if (recruiter_row) recruiter_node = sample.respondents[*recruiter_row].node_id;
    const ReportedEgo ego = apply_report_errors(net, v, recruiter_node, cfg, reporting);
    r.reported_degree = ego.degree;
    r.reported_n_a = ego.n_a;
    r.reported_n_b = ego.n_b;
    if (!sampled[v]) {
      sampled[v] = 1;
      --unsampled;
    }
    if (recruiter_node) sample.recruitment_edges.emplace_back(*recruiter_node, v);
    queue.push_back(sample.respondents.size());
    sample.respondents.push_back(r);
  };

  const std::size_t first_seeds = std::min(cfg.n_seeds, cfg.target_size);
  for (NodeId s : draw_seeds(net, first_seeds, cfg.seed_mode, seeding)) enroll(s, std::nullopt);

  std::vector<NodeId> eligible;
  std::vector<double> weights;
  while (sample.respondents.size() < cfg.target_size) {
    if (queue.empty()) {
      if (!cfg.reseed_on_dieout || unsampled == 0) {
        sample.incomplete = true;
        break;
      }
      std::vector<double> w(net.node_count(), 0.0);
      for (NodeId v = 0; v < net.node_count(); ++v) {
        if (sampled[v]) continue;
        w[v] = cfg.seed_mode == SeedMode::uniform ? 1.0 : static_cast<double>(net.degree(v));
      }
      auto pick = draw_without_replacement(std::move(w), 1, seeding);
      if (pick.empty()) {
        sample.incomplete = true;
        break;
      }
      enroll(static_cast<NodeId>(pick.front()), std::nullopt);
      continue;
    }

    const std::size_t row = queue.front();
    queue.pop_front();
    if (cfg.coupons == 0) continue;
    const NodeId v = sample.respondents[row].node_id;
    eligible.clear();
    weights.clear();
    for (NodeId u : net.neighbors(v)) {
      if (!cfg.with_replacement && sampled[u]) continue;
      eligible.push_back(u);
      weights.push_back(net.group(u) == Group::A ? 1.0 + cfg.p_diff : 1.0);
    }
    if (eligible.empty()) continue;
    const std::size_t quota = std::min(cfg.coupons, cfg.target_size - sample.respondents.size());
    for (std::size_t pos : draw_without_replacement(weights, quota, recruiting)) {
      enroll(eligible[pos], row);
    }
  }
  return sample;
}

}  // namespace rdslab
