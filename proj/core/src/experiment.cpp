#include "rdslab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "parallel.hpp"
#include "rdslab/errors.hpp"
#include "rdslab/estimate.hpp"
#include "rdslab/io.hpp"
#include "rdslab/metrics.hpp"

namespace rdslab {

using nlohmann::json;

bool estimates_link_share(std::string_view estimator) noexcept {
  return estimator == "s_ab" || estimator == "s_ab_ego";
}

std::string_view to_string(CellStatus s) noexcept {
  return s == CellStatus::ok ? "ok" : "tuning_failed";
}

void ExperimentSpec::validate() const {
  if (replications < 1) throw InvalidArgument("replications must be at least 1");
  if (rds.p_diff.empty() || rds.p_miss.empty() || rds.p_err.empty())
    throw InvalidArgument("rds grids must be non-empty");
  if (estimators.empty()) throw InvalidArgument("no estimators requested");
  for (const auto& e : estimators) {
    if (std::find(std::begin(kEstimatorNames), std::end(kEstimatorNames), e) == std::end(kEstimatorNames))
      throw InvalidArgument("unknown estimator '" + e + "'");
  }
  const int sources = (network.generate ? 1 : 0) + (network.edge_path.empty() ? 0 : 1) + (network.base ? 1 : 0);
  if (sources != 1) throw InvalidArgument("exactly one network source must be given");
  if (!network.edge_path.empty() && network.attr_path.empty())
    throw InvalidArgument("network edges given without attrs");
  if (bootstrap) {
    if (bootstrap->methods.empty()) throw InvalidArgument("bootstrap needs at least one method");
    BootstrapConfig{bootstrap->methods.front(), bootstrap->replicates, bootstrap->level}.validate();
  }
  RdsConfig probe = rds.base;
  for (double d : rds.p_diff) {
    probe.p_diff = d;
    probe.validate();
  }
  for (auto [a, b] : rds.p_miss) {
    probe.p_miss_a = a;
    probe.p_miss_b = b;
    probe.validate();
  }
  for (auto [ab, ba] : rds.p_err) {
    probe.p_err_ab = ab;
    probe.p_err_ba = ba;
    probe.validate();
  }
}

namespace {

void reject_unknown(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ValidationError(std::string(where) + " must be a JSON object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
      throw ValidationError("unknown key '" + item.key() + "' in " + std::string(where));
  }
}

template <typename T>
void read_opt(const json& obj, const char* key, T& into) {
  if (obj.contains(key)) into = obj.at(key).get<T>();
}

std::vector<std::pair<double, double>> read_pairs(const json& arr, const char* what) {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2)
      throw ValidationError(std::string(what) + " entries must be [a, b] pairs");
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

}  // namespace

ExperimentSpec ExperimentSpec::from_json(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentSpec spec;
  try {
    const json doc = json::parse(text);
    reject_unknown(doc, "spec", {"master_seed", "replications", "workers", "network", "rds", "estimators",
                                 "bootstrap", "output"});
    if (!doc.contains("master_seed")) throw ValidationError("spec: master_seed is required");
    spec.master_seed = doc.at("master_seed").get<std::uint64_t>();
    read_opt(doc, "replications", spec.replications);
    read_opt(doc, "workers", spec.workers);
    read_opt(doc, "estimators", spec.estimators);

    if (!doc.contains("network")) throw ValidationError("spec: network is required");
    const json& net = doc.at("network");
    reject_unknown(net, "network", {"generate", "edges", "attrs", "p_a", "h", "w", "tolerance_h", "tolerance_w",
                                    "max_iterations"});
    NetworkSource& src = spec.network;
    if (net.contains("generate")) {
      const json& g = net.at("generate");
      reject_unknown(g, "network.generate",
                     {"n", "w0", "p_r", "p_d", "p_delta", "delta", "steps", "target_mean_degree"});
      KoskkParams k;
      read_opt(g, "n", k.n);
      read_opt(g, "w0", k.w0);
      read_opt(g, "p_r", k.p_r);
      read_opt(g, "p_d", k.p_d);
      read_opt(g, "delta", k.delta);
      read_opt(g, "target_mean_degree", k.target_mean_degree);
      k.steps = KoskkParams::scaled_steps(k.n);
      read_opt(g, "steps", k.steps);
      src.calibrate = !g.contains("p_delta");
      read_opt(g, "p_delta", k.p_delta);
      src.generate = k;
    }
    if (net.contains("edges")) src.edge_path = resolve(base_dir, net.at("edges").get<std::string>());
    if (net.contains("attrs")) src.attr_path = resolve(base_dir, net.at("attrs").get<std::string>());
    if (net.contains("p_a")) src.p_a = net.at("p_a").get<double>();
    read_opt(net, "h", src.h_targets);
    read_opt(net, "w", src.w_targets);
    read_opt(net, "tolerance_h", src.tolerance_h);
    read_opt(net, "tolerance_w", src.tolerance_w);
    read_opt(net, "max_iterations", src.max_iterations);
    if (src.generate && !src.p_a) src.p_a = 0.3;

    if (doc.contains("rds")) {
      const json& r = doc.at("rds");
      reject_unknown(r, "rds", {"seeds", "coupons", "sample_size", "with_replacement", "seed_mode",
                                "reseed_on_dieout", "p_diff", "p_miss", "p_err"});
      RdsConfig& base = spec.rds.base;
      read_opt(r, "seeds", base.n_seeds);
      read_opt(r, "coupons", base.coupons);
      read_opt(r, "sample_size", base.target_size);
      read_opt(r, "with_replacement", base.with_replacement);
      read_opt(r, "reseed_on_dieout", base.reseed_on_dieout);
      if (r.contains("seed_mode")) {
        const auto mode = r.at("seed_mode").get<std::string>();
        if (mode == "uniform") base.seed_mode = SeedMode::uniform;
        else if (mode == "degree_proportional") base.seed_mode = SeedMode::degree_proportional;
        else throw ValidationError("rds.seed_mode must be uniform or degree_proportional");
      }
      read_opt(r, "p_diff", spec.rds.p_diff);
      if (r.contains("p_miss")) spec.rds.p_miss = read_pairs(r.at("p_miss"), "rds.p_miss");
      if (r.contains("p_err")) spec.rds.p_err = read_pairs(r.at("p_err"), "rds.p_err");
    }

    if (doc.contains("bootstrap")) {
      const json& b = doc.at("bootstrap");
      reject_unknown(b, "bootstrap", {"methods", "replicates", "level", "samples"});
      BootstrapSpec bs;
      for (const auto& m : b.value("methods", std::vector<std::string>{"origin", "ego1", "ego2"})) {
        auto parsed = parse_bootstrap_method(m);
        if (!parsed) throw ValidationError("unknown bootstrap method '" + m + "'");
        bs.methods.push_back(*parsed);
      }
      read_opt(b, "replicates", bs.replicates);
      read_opt(b, "level", bs.level);
      read_opt(b, "samples", bs.samples);
      spec.bootstrap = bs;
    }

    if (doc.contains("output")) {
      const json& o = doc.at("output");
      reject_unknown(o, "output", {"results", "estimates"});
      if (o.contains("results")) spec.results_path = resolve(base_dir, o.at("results").get<std::string>());
      if (o.contains("estimates")) spec.estimates_path = resolve(base_dir, o.at("estimates").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("spec: ") + e.what());
  }
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw ValidationError(std::string("spec: ") + e.what());
  }
  return spec;
}

ExperimentSpec ExperimentSpec::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str(), path.parent_path());
}

namespace {

// Stream-key domains kept apart from cell indices.
constexpr std::uint64_t kBaseNetworkDomain = 1ULL << 40;
constexpr std::uint64_t kPopulationDomain = 2ULL << 40;
constexpr std::uint64_t kBootstrapDomain = 0xb007;

struct Population {
  std::optional<double> h_target;
  std::optional<double> w_target;
  std::optional<Network> net;  // nullopt when tuning failed
  NetworkStats stats;
};

Network base_network(const ExperimentSpec& spec) {
  const NetworkSource& src = spec.network;
  if (src.base) return *src.base;
  if (!src.edge_path.empty()) return giant_component(ingest_network(src.edge_path, src.attr_path).network);
  KoskkParams params = *src.generate;
  const StreamKey key = StreamKey(spec.master_seed).child(kBaseNetworkDomain);
  if (src.calibrate) {
    Rng cal = key.stream(StreamTag::calibration);
    params.p_delta = calibrate_p_delta(params, cal);
  }
  Rng gen = key.stream(StreamTag::generation);
  return koskk_generate(params, gen);
}

std::vector<Population> build_populations(const ExperimentSpec& spec, const Network& base) {
  const NetworkSource& src = spec.network;
  std::vector<std::optional<double>> hs(src.h_targets.begin(), src.h_targets.end());
  std::vector<std::optional<double>> ws(src.w_targets.begin(), src.w_targets.end());
  if (hs.empty()) hs.emplace_back();
  if (ws.empty()) ws.emplace_back();

  std::vector<Population> pops;
  for (const auto& h : hs)
    for (const auto& w : ws) pops.push_back({h, w, std::nullopt, {}});

  detail::parallel_for(pops.size(), spec.workers, [&](std::size_t i) {
    Population& pop = pops[i];
    const StreamKey key = StreamKey(spec.master_seed).child(kPopulationDomain + i);
    Network net = base;
    if (src.p_a) {
      Rng rng = key.stream(StreamTag::grouping);
      net = assign_groups(net, *src.p_a, rng);
    }
    Rng tuning = key.stream(StreamTag::tuning);
    try {
      if (pop.w_target) {
        TuneTargets t{net.group_size(Group::A) / static_cast<double>(net.node_count()), *pop.w_target, 0.0,
                      src.tolerance_w, src.max_iterations};
        net = tune_activity_ratio(net, t, tuning);
      }
      if (pop.h_target) {
        TuneTargets t{net.group_size(Group::A) / static_cast<double>(net.node_count()), 1.0, *pop.h_target,
                      src.tolerance_h, src.max_iterations};
        net = tune_homophily(net, t, tuning);
      }
    } catch (const TuningError&) {
      pop.stats = compute_stats(net);
      return;
    } catch (const InvalidArgument&) {
      pop.stats = compute_stats(net);
      return;
    }
    pop.stats = compute_stats(net);
    pop.net = std::move(net);
  });
  return pops;
}

std::optional<double> estimator_value(const EstimateSet& e, std::string_view name) {
  if (name == "sample") return e.sample_proportion;
  if (name == "rdsi") return e.rdsi;
  if (name == "rdsii") return e.rdsii;
  if (name == "rdsi_ego") return e.rdsi_ego;
  if (name == "s_ab") return e.s_observed.s_ab();
  if (name == "s_ab_ego") return e.s_ego.s_ab();
  return std::nullopt;
}

struct Cell {
  CellParams params;
  const Population* population;
  RdsConfig rds;
};

struct Replication {
  std::vector<std::optional<double>> values;
  std::vector<std::optional<bool>> covered;  // per bootstrap method; nullopt = failed or skipped
};

}  // namespace

ExperimentResults run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const Network base = base_network(spec);
  const std::vector<Population> pops = build_populations(spec, base);

  std::vector<Cell> cells;
  for (const Population& pop : pops) {
    for (double p_diff : spec.rds.p_diff) {
      for (auto [miss_a, miss_b] : spec.rds.p_miss) {
        for (auto [err_ab, err_ba] : spec.rds.p_err) {
          Cell c;
          c.population = &pop;
          c.rds = spec.rds.base;
          c.rds.p_diff = p_diff;
          c.rds.p_miss_a = miss_a;
          c.rds.p_miss_b = miss_b;
          c.rds.p_err_ab = err_ab;
          c.rds.p_err_ba = err_ba;
          CellParams& p = c.params;
          p.cell = cells.size();
          p.status = pop.net ? CellStatus::ok : CellStatus::tuning_failed;
          p.h_target = pop.h_target;
          p.w_target = pop.w_target;
          p.p_a = pop.stats.p_a;
          p.s_ab = pop.stats.s_star.s_ab();
          p.h = pop.stats.homophily;
          p.w = pop.stats.activity_ratio;
          p.p_diff = p_diff;
          p.p_miss_a = miss_a;
          p.p_miss_b = miss_b;
          p.p_err_ab = err_ab;
          p.p_err_ba = err_ba;
          p.seeds = c.rds.n_seeds;
          p.coupons = c.rds.coupons;
          p.m = spec.replications;
          cells.push_back(c);
        }
      }
    }
  }

  const std::size_t m = spec.replications;
  const std::size_t k = spec.estimators.size();
  const std::size_t n_methods = spec.bootstrap ? spec.bootstrap->methods.size() : 0;
  const std::size_t bs_samples =
      spec.bootstrap ? (spec.bootstrap->samples == 0 ? m : std::min(m, spec.bootstrap->samples)) : 0;

  std::vector<Replication> reps(cells.size() * m);
  detail::parallel_for(reps.size(), spec.workers, [&](std::size_t task) {
    const Cell& cell = cells[task / m];
    const std::size_t r = task % m;
    Replication& out = reps[task];
    out.values.assign(k, std::nullopt);
    out.covered.assign(n_methods, std::nullopt);
    if (!cell.population->net) return;
    const Network& net = *cell.population->net;

    const StreamKey key = StreamKey(spec.master_seed).child(cell.params.cell).child(r);
    const RdsSample sample = run_rds(net, cell.rds, key);
    try {
      const EstimateSet est = estimate_all(sample);
      for (std::size_t e = 0; e < k; ++e) out.values[e] = estimator_value(est, spec.estimators[e]);
    } catch (const EstimationError&) {
      // Seeds only: the raw sample share is the one value left to report.
      std::size_t n_a = 0;
      for (const auto& resp : sample.respondents) n_a += resp.true_group == Group::A ? 1 : 0;
      for (std::size_t e = 0; e < k; ++e) {
        if (spec.estimators[e] == "sample" && !sample.respondents.empty())
          out.values[e] = static_cast<double>(n_a) / static_cast<double>(sample.respondents.size());
      }
      return;
    }
    if (r >= bs_samples) return;
    for (std::size_t b = 0; b < n_methods; ++b) {
      BootstrapConfig cfg{spec.bootstrap->methods[b], spec.bootstrap->replicates, spec.bootstrap->level};
      try {
        const auto res = bootstrap_ci(sample, cfg, key.child(kBootstrapDomain + b));
        out.covered[b] = res.ci.contains(cell.params.p_a);
      } catch (const EstimationError&) {
      }
    }
  });

  ExperimentResults results;
  for (const Cell& cell : cells) {
    const auto first = reps.begin() + static_cast<std::ptrdiff_t>(cell.params.cell * m);
    const double truth_p = cell.params.p_a;
    const double truth_s = cell.params.s_ab.value_or(std::nan(""));

    EstimateTable table(m, k);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t e = 0; e < k; ++e) table.at(r, e) = first[static_cast<std::ptrdiff_t>(r)].values[e];

    std::vector<ResultRow> rows(k);
    for (std::size_t e = 0; e < k; ++e) {
      ResultRow& row = rows[e];
      row.params = cell.params;
      row.estimator = spec.estimators[e];
      const auto column = table.column(e);
      const double truth = estimates_link_share(row.estimator) ? truth_s : truth_p;
      row.n_undefined = static_cast<std::size_t>(std::count(column.begin(), column.end(), std::nullopt));
      if (cell.params.status == CellStatus::ok) {
        try {
          const MetricSummary s = compute_metrics(column, truth);
          row.bias = s.bias;
          row.sd = s.sd;
          row.rmse = s.rmse;
          row.mean = s.mean;
        } catch (const EstimationError&) {
          if (row.n_undefined + 1 == m) {
            for (const auto& v : column) {
              if (!v) continue;
              row.mean = *v;
              row.bias = std::abs(*v - truth);
              row.rmse = row.bias;
            }
          }
        }
      }
      if (cell.params.status == CellStatus::ok) {
        for (std::size_t r = 0; r < m; ++r) {
          results.estimates.push_back({cell.params.cell, r, row.estimator, column[r], truth});
        }
      }
    }

    if (cell.params.status == CellStatus::ok) {
      for (bool link_family : {false, true}) {
        std::vector<std::size_t> members;
        for (std::size_t e = 0; e < k; ++e)
          if (estimates_link_share(spec.estimators[e]) == link_family) members.push_back(e);
        if (members.size() < 2) continue;
        EstimateTable sub(m, members.size());
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t j = 0; j < members.size(); ++j) sub.at(r, j) = table.at(r, members[j]);
        const auto p_best = compute_p_best(sub, link_family ? truth_s : truth_p);
        for (std::size_t j = 0; j < members.size(); ++j) rows[members[j]].p_best = p_best[j];
      }
    }
    results.rows.insert(results.rows.end(), rows.begin(), rows.end());

    for (std::size_t b = 0; b < n_methods; ++b) {
      ResultRow row;
      row.params = cell.params;
      row.estimator = "bs_" + std::string(to_string(spec.bootstrap->methods[b]));
      std::size_t covered = 0;
      std::size_t attempted = 0;
      for (std::size_t r = 0; r < bs_samples; ++r) {
        const auto& c = first[static_cast<std::ptrdiff_t>(r)].covered[b];
        if (!c) {
          ++row.n_undefined;
          continue;
        }
        ++attempted;
        covered += *c ? 1 : 0;
      }
      if (attempted > 0) row.ci_coverage = static_cast<double>(covered) / static_cast<double>(attempted);
      results.rows.push_back(row);
    }
  }
  return results;
}

}  // namespace rdslab
