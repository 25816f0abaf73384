#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "rdslab/errors.hpp"
#include "rdslab/experiment.hpp"

using namespace rdslab;
using namespace rdslab::testing;

namespace {

std::string csv_of(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  write_results_csv(rows, out);
  return out.str();
}

const ResultRow& row_for(const ExperimentResults& r, std::size_t cell, std::string_view estimator) {
  for (const auto& row : r.rows)
    if (row.params.cell == cell && row.estimator == estimator) return row;
  FAIL("no row " << cell << " " << estimator);
  return r.rows.front();
}

ExperimentSpec small_spec(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ExperimentSpec spec;
  spec.network.base = random_network(rng, 400, 0.02, 0.3);
  spec.network.h_targets = {0.0, 0.3};
  spec.network.w_targets = {1.0};
  spec.rds.base.target_size = 80;
  spec.rds.p_diff = {0.0, 1.0};
  spec.estimators = {"sample", "rdsi", "rdsii", "rdsi_ego", "s_ab", "s_ab_ego"};
  spec.replications = 40;
  spec.master_seed = seed;
  BootstrapSpec bs;
  bs.methods = {BootstrapMethod::origin, BootstrapMethod::ego2};
  bs.replicates = 50;
  bs.samples = 10;
  spec.bootstrap = bs;
  return spec;
}

}  // namespace

TEST_CASE("spec from JSON") {
  const auto spec = ExperimentSpec::from_json(R"({
    "master_seed": 17,
    "replications": 12,
    "network": {"generate": {"n": 500, "p_delta": 0.04}, "p_a": 0.25, "h": [0, 0.2], "w": [1, 2]},
    "rds": {"seeds": 4, "coupons": 3, "sample_size": 100, "seed_mode": "degree_proportional",
            "p_diff": [0, 0.5], "p_miss": [[0, 0], [0.1, 0.2]], "p_err": [[0.05, 0]]},
    "estimators": ["rdsi", "rdsi_ego"],
    "bootstrap": {"methods": ["ego1"], "replicates": 99, "level": 0.9},
    "output": {"results": "out/results.csv"}
  })", "/data");
  CHECK(spec.master_seed == 17);
  CHECK(spec.replications == 12);
  REQUIRE(spec.network.generate.has_value());
  CHECK(spec.network.generate->n == 500);
  CHECK(spec.network.generate->p_delta == 0.04);
  CHECK_FALSE(spec.network.calibrate);
  CHECK(spec.network.p_a == 0.25);
  CHECK(spec.network.h_targets == std::vector<double>{0.0, 0.2});
  CHECK(spec.rds.base.n_seeds == 4);
  CHECK(spec.rds.base.seed_mode == SeedMode::degree_proportional);
  CHECK(spec.rds.p_miss.size() == 2);
  CHECK(spec.rds.p_miss[1] == std::pair{0.1, 0.2});
  CHECK(spec.rds.p_err[0].first == 0.05);
  CHECK(spec.bootstrap->methods == std::vector<BootstrapMethod>{BootstrapMethod::ego1});
  CHECK(spec.bootstrap->replicates == 99);
  CHECK(spec.results_path == std::filesystem::path("/data/out/results.csv"));

  const auto calibrated = ExperimentSpec::from_json(R"({"master_seed": 1, "network": {"generate": {"n": 300}}})");
  CHECK(calibrated.network.calibrate);
  CHECK(calibrated.network.p_a == 0.3);
}

TEST_CASE("spec errors") {
  auto rejects = [](const char* text, const char* fragment) {
    try {
      ExperimentSpec::from_json(text);
    } catch (const ValidationError& e) {
      INFO(e.what());
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
      return;
    }
    FAIL("accepted: " << text);
  };
  rejects(R"({"network": {"edges": "a", "attrs": "b"}})", "master_seed");
  rejects(R"({"master_seed": 1, "network": {"edges": "a", "attrs": "b"}, "colour": 1})", "colour");
  rejects(R"({"master_seed": 1, "network": {"generate": {"n": 100, "size": 3}}})", "size");
  rejects(R"({"master_seed": 1, "network": {"edges": "a", "attrs": "b"}, "rds": {"p_miss": [[0.1]]}})",
          "pairs");
  rejects(R"({"master_seed": "x", "network": {}})", "spec");
  rejects(R"({"master_seed": 1, "network": {"edges": "a", "attrs": "b"}, "replications": 0})", "spec");
  rejects(R"({"master_seed": 1, "network": {"edges": "a", "attrs": "b"}, "estimators": ["median"]})",
          "median");
  rejects(R"({"master_seed": 1, "network": {"edges": "a", "attrs": "b", "generate": {}}})", "spec");
  rejects(R"({"master_seed": 1, "network": {"edges": "a", "attrs": "b"}, "bootstrap": {"methods": ["x"]}})",
          "'x'");
  rejects("{not json", "spec");
  CHECK_THROWS_AS(ExperimentSpec::from_file("/nonexistent/spec.json"), ValidationError);
}

TEST_CASE("output does not depend on the worker count") {
  ExperimentSpec spec = small_spec(5);
  spec.workers = 1;
  const ExperimentResults one = run_experiment(spec);
  spec.workers = 8;
  const ExperimentResults eight = run_experiment(spec);
  CHECK(csv_of(one.rows) == csv_of(eight.rows));
  std::ostringstream a, b;
  write_estimates_csv(one.estimates, a);
  write_estimates_csv(eight.estimates, b);
  CHECK(a.str() == b.str());

  spec.master_seed = 6;
  CHECK(csv_of(run_experiment(spec).rows) != csv_of(one.rows));
}

TEST_CASE("results accounting and CSV round-trip") {
  const ExperimentSpec spec = small_spec(9);
  const ExperimentResults res = run_experiment(spec);
  // 2 populations x 2 p_diff cells, each with 6 estimator rows and 2 coverage rows.
  CHECK(res.rows.size() == 4 * 8);
  for (std::size_t cell = 0; cell < 4; ++cell) {
    double p_best_p = 0.0, p_best_s = 0.0;
    for (const auto& row : res.rows) {
      if (row.params.cell != cell) continue;
      CHECK(row.params.status == CellStatus::ok);
      CHECK(row.params.m == spec.replications);
      if (row.estimator.rfind("bs_", 0) == 0) {
        REQUIRE(row.ci_coverage.has_value());
        CHECK(*row.ci_coverage >= 0.0);
        CHECK(*row.ci_coverage <= 1.0);
        continue;
      }
      std::size_t defined = 0;
      for (const auto& e : res.estimates)
        if (e.cell == cell && e.estimator == row.estimator && e.value) ++defined;
      CHECK(defined + row.n_undefined == row.params.m);
      REQUIRE(row.rmse.has_value());
      CHECK(*row.rmse + 1e-12 >= *row.bias);
      (estimates_link_share(row.estimator) ? p_best_s : p_best_p) += row.p_best.value_or(0.0);
    }
    CHECK(p_best_p == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(p_best_s == doctest::Approx(1.0).epsilon(1e-9));
  }

  const std::string text = csv_of(res.rows);
  std::istringstream in(text);
  const auto back = read_results_csv(in);
  REQUIRE(back.size() == res.rows.size());
  CHECK(csv_of(back) == text);
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].estimator == res.rows[i].estimator);
    CHECK(back[i].n_undefined == res.rows[i].n_undefined);
    if (res.rows[i].bias) CHECK(*back[i].bias == doctest::Approx(*res.rows[i].bias).epsilon(1e-5));
  }
}

TEST_CASE("CSV format details") {
  ResultRow row;
  row.params.cell = 3;
  row.params.p_a = 1.0 / 3.0;
  row.params.h_target = 0.3;
  row.estimator = "rdsi";
  row.bias = 0.000123456789;
  row.sd = 12345678.9;
  const std::string text = csv_of({row});
  const std::string header = text.substr(0, text.find('\n'));
  CHECK(header ==
        "cell,status,h_target,w_target,p_a,s_ab,h,w,p_diff,p_miss_a,p_miss_b,p_err_ab,p_err_ba,seeds,coupons,m,"
        "estimator,bias,sd,rmse,p_best,n_undefined,ci_coverage,mean");
  CHECK(text.find(",0.333333,") != std::string::npos);
  CHECK(text.find(",0.000123457,") != std::string::npos);
  CHECK(text.find(",1.23457e+07,") != std::string::npos);
  CHECK(text.find("3,ok,0.3,,") != std::string::npos);

  std::istringstream bad("cell,status\n0,ok\n");
  CHECK_THROWS_AS(read_results_csv(bad), ValidationError);
}

TEST_CASE("unreachable tuning target marks the cell and the run goes on") {
  ExperimentSpec spec = small_spec(13);
  spec.network.h_targets = {0.0, -3.0};  // would need s_AB > 1
  spec.network.tolerance_h = 0.001;
  spec.network.max_iterations = 20000;
  spec.rds.p_diff = {0.0};
  spec.bootstrap.reset();
  const ExperimentResults res = run_experiment(spec);
  const ResultRow& ok = row_for(res, 0, "rdsi");
  const ResultRow& failed = row_for(res, 1, "rdsi");
  CHECK(ok.params.status == CellStatus::ok);
  CHECK(ok.bias.has_value());
  CHECK(failed.params.status == CellStatus::tuning_failed);
  CHECK_FALSE(failed.bias.has_value());
  CHECK(csv_of(res.rows).find("tuning_failed") != std::string::npos);
  for (const auto& e : res.estimates) CHECK(e.cell == 0);
}

TEST_CASE("one replication with no coupons") {
  std::mt19937_64 rng(3);
  ExperimentSpec spec;
  spec.network.base = random_network(rng, 200, 0.03, 0.4);
  spec.rds.base.n_seeds = 6;
  spec.rds.base.coupons = 0;
  spec.rds.base.target_size = 6;
  spec.rds.base.reseed_on_dieout = false;
  spec.estimators = {"sample", "rdsi"};
  spec.replications = 1;
  spec.master_seed = 77;
  const ExperimentResults res = run_experiment(spec);

  const RdsSample seeds = run_rds(*spec.network.base, spec.rds.base, StreamKey(77).child(0).child(0));
  double share = 0.0;
  for (const auto& r : seeds.respondents) share += r.true_group == Group::A ? 1.0 : 0.0;
  share /= static_cast<double>(seeds.respondents.size());
  const double truth = compute_stats(*spec.network.base).p_a;

  const ResultRow& sample = row_for(res, 0, "sample");
  REQUIRE(sample.bias.has_value());
  CHECK(*sample.bias == doctest::Approx(std::abs(share - truth)).epsilon(1e-12));
  CHECK(sample.n_undefined == 0);
  CHECK_FALSE(sample.sd.has_value());
  const ResultRow& rdsi = row_for(res, 0, "rdsi");
  CHECK(rdsi.n_undefined == 1);
  CHECK_FALSE(rdsi.bias.has_value());
}

TEST_CASE("network files as the source") {
  const auto dir = std::filesystem::temp_directory_path() / "rdslab_experiment_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream e(dir / "g.edges"), a(dir / "g.attrs");
    std::mt19937_64 rng(4);
    const Network net = random_network(rng, 150, 0.04, 0.35);
    for (const Edge& edge : net.edges()) e << edge.u << ' ' << edge.v << '\n';
    for (NodeId v = 0; v < net.node_count(); ++v) a << v << ' ' << to_char(net.group(v)) << '\n';
    std::ofstream s(dir / "spec.json");
    s << R"({"master_seed": 2, "replications": 5, "network": {"edges": "g.edges", "attrs": "g.attrs"},
             "rds": {"sample_size": 40}})";
  }
  const ExperimentSpec spec = ExperimentSpec::from_file(dir / "spec.json");
  CHECK(spec.network.edge_path == dir / "g.edges");
  const ExperimentResults res = run_experiment(spec);
  CHECK(res.rows.size() == spec.estimators.size());
  CHECK(res.rows.front().params.status == CellStatus::ok);
  std::filesystem::remove_all(dir);
}

TEST_CASE("symmetric missing-alter error barely moves the bias") {
  std::mt19937_64 rng(21);
  ExperimentSpec spec;
  spec.network.base = random_network(rng, 2000, 0.005, 0.3);
  spec.network.h_targets = {0.3};
  spec.network.w_targets = {1.5};
  spec.rds.base.target_size = 300;
  spec.rds.p_miss = {{0.0, 0.0}, {0.1, 0.1}, {0.2, 0.2}};
  spec.estimators = {"rdsi", "rdsii", "rdsi_ego"};
  spec.replications = 300;
  spec.master_seed = 404;
  spec.workers = 8;
  const ExperimentResults res = run_experiment(spec);
  for (const char* est : {"rdsi", "rdsii", "rdsi_ego"}) {
    const double base = *row_for(res, 0, est).bias;
    for (std::size_t cell : {1, 2}) {
      INFO(est << " cell " << cell << " bias " << *row_for(res, cell, est).bias << " vs " << base);
      CHECK(std::abs(*row_for(res, cell, est).bias - base) <= 0.02);
    }
  }
}
