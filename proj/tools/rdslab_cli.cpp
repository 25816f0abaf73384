#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdslab/bootstrap.hpp"
#include "rdslab/csv.hpp"
#include "rdslab/errors.hpp"
#include "rdslab/estimate.hpp"
#include "rdslab/experiment.hpp"
#include "rdslab/io.hpp"
#include "rdslab/netgen.hpp"
#include "rdslab/network.hpp"
#include "rdslab/plot.hpp"
#include "rdslab/random.hpp"
#include "rdslab/rds.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rdslab;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kRuntime = 3 };

struct Globals {
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string out;
  std::string config;
};

// Network file pair naming: <prefix>.edges / <prefix>.attrs.
fs::path edges_of(const std::string& prefix) { return prefix + ".edges"; }
fs::path attrs_of(const std::string& prefix) { return prefix + ".attrs"; }

void write_text(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << body;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json stats_json(const NetworkStats& s) {
  return {{"nodes", s.node_count},
          {"edges", s.edge_count},
          {"n_a", s.n_a},
          {"n_b", s.n_b},
          {"p_a", s.p_a},
          {"mean_degree", s.mean_degree},
          {"s_ab", optional_json(s.s_star.s_ab())},
          {"s_ba", optional_json(s.s_star.s_ba())},
          {"h", optional_json(s.homophily)},
          {"w", optional_json(s.activity_ratio)}};
}

void report_network(const Network& net) { std::cerr << stats_json(compute_stats(net)).dump() << '\n'; }

struct RdsFlags {
  RdsConfig cfg;
  std::string seed_mode = "uniform";

  void attach(CLI::App* app) {
    app->add_option("--seeds", cfg.n_seeds, "number of seeds");
    app->add_option("--coupons", cfg.coupons, "coupons per respondent");
    app->add_option("--size", cfg.target_size, "target sample size");
    app->add_flag("--with-replacement", cfg.with_replacement, "allow repeat respondents");
    app->add_option("--seed-mode", seed_mode, "uniform | degree_proportional")
        ->check(CLI::IsMember({"uniform", "degree_proportional"}));
    app->add_option("--p-diff", cfg.p_diff, "differential recruitment towards A");
    app->add_option("--p-miss-a", cfg.p_miss_a);
    app->add_option("--p-miss-b", cfg.p_miss_b);
    app->add_option("--p-err-ab", cfg.p_err_ab);
    app->add_option("--p-err-ba", cfg.p_err_ba);
  }

  RdsConfig get() const {
    RdsConfig c = cfg;
    c.seed_mode = seed_mode == "uniform" ? SeedMode::uniform : SeedMode::degree_proportional;
    c.validate();
    return c;
  }
};

json estimates_json(const RdsSample& sample) {
  const EstimateSet e = estimate_all(sample);
  std::size_t seeds = 0;
  for (const auto& r : sample.respondents) seeds += r.is_seed() ? 1 : 0;
  return {{"respondents", sample.respondents.size()},
          {"seeds", seeds},
          {"sample", e.sample_proportion},
          {"rdsi", optional_json(e.rdsi)},
          {"rdsii", e.rdsii},
          {"rdsi_ego", optional_json(e.rdsi_ego)},
          {"s_ab", optional_json(e.s_observed.s_ab())},
          {"s_ba", optional_json(e.s_observed.s_ba())},
          {"s_ab_ego", optional_json(e.s_ego.s_ab())},
          {"s_ba_ego", optional_json(e.s_ego.s_ba())},
          {"dbar_a", optional_json(e.dbar_a)},
          {"dbar_b", optional_json(e.dbar_b)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rdslab: respondent-driven sampling simulation and estimation"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "master seed");
  app.add_option("--workers", g.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "output path (or prefix for network files)");
  app.add_option("--config", g.config, "experiment spec JSON");

  // generate
  auto* gen = app.add_subcommand("generate", "grow a KOSKK network and write <out>.edges/<out>.attrs");
  KoskkParams kp;
  std::optional<double> gen_p_delta;
  std::optional<std::uint64_t> gen_steps;
  double gen_p_a = 0.3;
  gen->add_option("--n", kp.n, "nodes");
  gen->add_option("--w0", kp.w0);
  gen->add_option("--p-r", kp.p_r, "global attachment probability");
  gen->add_option("--p-d", kp.p_d, "node deletion probability");
  gen->add_option("--p-delta", gen_p_delta, "triadic closure probability (calibrated when absent)");
  gen->add_option("--delta", kp.delta, "weight reinforcement");
  gen->add_option("--steps", gen_steps, "evolution steps (default n*10^4)");
  gen->add_option("--mean-degree", kp.target_mean_degree, "calibration target");
  gen->add_option("--p-a", gen_p_a, "share of nodes labelled A");

  // tune
  auto* tune = app.add_subcommand("tune", "relabel and rewire a network towards P_A, w and h targets");
  std::string tune_in;
  std::optional<double> tune_p_a, tune_h, tune_w;
  double tol_h = 0.005, tol_w = 0.02;
  std::uint64_t max_iter = 10'000'000;
  tune->add_option("--in", tune_in, "input prefix (<in>.edges, <in>.attrs)")->required();
  tune->add_option("--p-a", tune_p_a, "relabel with this share of A nodes");
  tune->add_option("--target-w", tune_w, "activity ratio target");
  tune->add_option("--target-h", tune_h, "homophily target");
  tune->add_option("--tolerance-h", tol_h);
  tune->add_option("--tolerance-w", tol_w);
  tune->add_option("--max-iterations", max_iter);

  // sample
  auto* smp = app.add_subcommand("sample", "run one RDS sample and write the sample CSV");
  std::string smp_in;
  RdsFlags rds_flags;
  smp->add_option("--in", smp_in, "network prefix")->required();
  rds_flags.attach(smp);

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate P_A from a sample CSV (JSON output)");
  std::string est_in;
  est->add_option("--in", est_in, "sample CSV")->required();

  // bootstrap
  auto* bs = app.add_subcommand("bootstrap", "bootstrap confidence interval from a sample CSV (JSON output)");
  std::string bs_in, bs_method = "ego2";
  BootstrapConfig bs_cfg;
  bs->add_option("--in", bs_in, "sample CSV")->required();
  bs->add_option("--method", bs_method, "origin | ego1 | ego2")->check(CLI::IsMember({"origin", "ego1", "ego2"}));
  bs->add_option("--replicates", bs_cfg.replicates);
  bs->add_option("--level", bs_cfg.level);

  // experiment
  auto* exp = app.add_subcommand("experiment", "run an experiment spec (--config) and write the results CSV");
  std::string exp_estimates;
  exp->add_option("--estimates", exp_estimates, "also write per-replication estimates CSV");

  // plot
  auto* plt = app.add_subcommand("plot", "render a results or estimates CSV as SVG");
  std::string plt_in, plt_kind;
  PlotOptions plt_opts;
  plt->add_option("--in", plt_in, "CSV input")->required();
  plt->add_option("--kind", plt_kind, "heatmap | histogram | boxplot | line")
      ->required()
      ->check(CLI::IsMember({"heatmap", "histogram", "boxplot", "line"}));
  plt->add_option("--estimator", plt_opts.estimator);
  plt->add_option("--bins", plt_opts.bins);
  plt->add_option("--title", plt_opts.title);
  plt->add_option("--p-diff", plt_opts.p_diff, "heatmap slice");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const StreamKey master(g.seed);
    if (*gen) {
      if (g.out.empty()) throw InvalidArgument("generate needs --out <prefix>");
      kp.steps = gen_steps ? *gen_steps : KoskkParams::scaled_steps(kp.n);
      if (gen_p_delta) {
        kp.p_delta = *gen_p_delta;
      } else {
        Rng cal = master.stream(StreamTag::calibration);
        kp.p_delta = calibrate_p_delta(kp, cal);
        std::cerr << "p_delta " << kp.p_delta << '\n';
      }
      Rng rng = master.stream(StreamTag::generation);
      Network net = koskk_generate(kp, rng);
      Rng grouping = master.stream(StreamTag::grouping);
      net = assign_groups(net, gen_p_a, grouping);
      write_network(net, edges_of(g.out), attrs_of(g.out));
      report_network(net);
    } else if (*tune) {
      if (g.out.empty()) throw InvalidArgument("tune needs --out <prefix>");
      IngestedNetwork in = ingest_network(edges_of(tune_in), attrs_of(tune_in));
      Network net = std::move(in.network);
      if (tune_p_a) {
        Rng grouping = master.stream(StreamTag::grouping);
        net = assign_groups(net, *tune_p_a, grouping);
      }
      Rng rng = master.stream(StreamTag::tuning);
      const double p_a = static_cast<double>(net.group_size(Group::A)) / static_cast<double>(net.node_count());
      if (tune_w) net = tune_activity_ratio(net, TuneTargets{p_a, *tune_w, 0.0, tol_w, max_iter}, rng);
      if (tune_h) net = tune_homophily(net, TuneTargets{p_a, 1.0, *tune_h, tol_h, max_iter}, rng);
      write_network(net, edges_of(g.out), attrs_of(g.out), in.ids);
      report_network(net);
    } else if (*smp) {
      IngestedNetwork in = ingest_network(edges_of(smp_in), attrs_of(smp_in));
      const RdsSample sample = run_rds(in.network, rds_flags.get(), master);
      if (sample.incomplete) std::cerr << "warning: sample stopped short of the target size\n";
      std::ostringstream body;
      write_rds_sample(sample, body);
      write_text(g.out, body.str());
    } else if (*est) {
      const RdsSample sample = ingest_rds_data(est_in);
      write_text(g.out, estimates_json(sample).dump(2) + "\n");
    } else if (*bs) {
      const RdsSample sample = ingest_rds_data(bs_in);
      bs_cfg.method = *parse_bootstrap_method(bs_method);
      bs_cfg.validate();
      const BootstrapResult res = bootstrap_ci(sample, bs_cfg, master);
      const json doc = {{"method", bs_method},
                        {"replicates", bs_cfg.replicates},
                        {"level", bs_cfg.level},
                        {"lower", res.ci.lower},
                        {"upper", res.ci.upper},
                        {"fallback_draws", res.fallback_draws},
                        {"redraws", res.redraws}};
      write_text(g.out, doc.dump(2) + "\n");
    } else if (*exp) {
      if (g.config.empty()) throw InvalidArgument("experiment needs --config <spec.json>");
      ExperimentSpec spec = ExperimentSpec::from_file(g.config);
      if (app.count("--seed")) spec.master_seed = g.seed;
      if (app.count("--workers")) spec.workers = g.workers;
      if (!g.out.empty()) spec.results_path = g.out;
      if (!exp_estimates.empty()) spec.estimates_path = exp_estimates;
      const ExperimentResults res = run_experiment(spec);
      std::ostringstream body;
      write_results_csv(res.rows, body);
      write_text(spec.results_path.string(), body.str());
      if (!spec.estimates_path.empty()) {
        std::ostringstream est_body;
        write_estimates_csv(res.estimates, est_body);
        write_text(spec.estimates_path.string(), est_body.str());
      }
    } else if (*plt) {
      const CsvTable table = read_csv(fs::path(plt_in));
      write_text(g.out, render_svg(table, *parse_plot_kind(plt_kind), plt_opts));
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}
