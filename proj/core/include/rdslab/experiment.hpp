#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rdslab/bootstrap.hpp"
#include "rdslab/netgen.hpp"
#include "rdslab/network.hpp"
#include "rdslab/rds.hpp"

namespace rdslab {

/// Where the population comes from and how it is relabelled and tuned.
///
/// Exactly one of `generate`, `edge_path`/`attr_path` or `base` supplies the
/// base graph. Groups are (re)assigned when `p_a` is set; every (h, w) pair of
/// the two target lists yields one tuned population. Empty lists skip that
/// tuning step.
struct NetworkSource {
  std::optional<KoskkParams> generate;
  /// Search p_delta for generate->target_mean_degree before generating.
  bool calibrate = false;
  std::filesystem::path edge_path;
  std::filesystem::path attr_path;
  std::optional<Network> base;

  std::optional<double> p_a;
  std::vector<double> h_targets;
  std::vector<double> w_targets;
  double tolerance_h = 0.005;
  double tolerance_w = 0.02;
  std::uint64_t max_iterations = 10'000'000;
};

struct RdsGrid {
  RdsConfig base;
  std::vector<double> p_diff{0.0};
  std::vector<std::pair<double, double>> p_miss{{0.0, 0.0}};  ///< (A, B)
  std::vector<std::pair<double, double>> p_err{{0.0, 0.0}};   ///< (A->B, B->A)
};

struct BootstrapSpec {
  std::vector<BootstrapMethod> methods;
  std::size_t replicates = 1000;
  double level = 0.95;
  std::size_t samples = 0;  ///< replications that get a CI; 0 = all
};

/// Estimator names understood by the harness.
inline constexpr std::string_view kEstimatorNames[] = {"sample", "rdsi", "rdsii", "rdsi_ego", "s_ab", "s_ab_ego"};

/// True for estimators of a link-type proportion (truth s*_AB) rather than P_A.
bool estimates_link_share(std::string_view estimator) noexcept;

struct ExperimentSpec {
  NetworkSource network;
  RdsGrid rds;
  std::vector<std::string> estimators{"sample", "rdsi", "rdsi_ego", "s_ab", "s_ab_ego"};
  std::size_t replications = 1000;
  std::optional<BootstrapSpec> bootstrap;
  std::uint64_t master_seed = 0;
  std::size_t workers = 1;
  std::filesystem::path results_path;
  std::filesystem::path estimates_path;

  /// Throws InvalidArgument on empty grids, unknown estimators or m < 1.
  void validate() const;

  /// Parses the JSON config. `master_seed` is mandatory and unknown keys are
  /// rejected. Relative file paths resolve against `base_dir`. Throws
  /// ValidationError.
  static ExperimentSpec from_json(std::string_view json, const std::filesystem::path& base_dir = {});
  static ExperimentSpec from_file(const std::filesystem::path& path);
};

enum class CellStatus { ok, tuning_failed };

std::string_view to_string(CellStatus s) noexcept;

struct CellParams {
  std::size_t cell = 0;
  CellStatus status = CellStatus::ok;
  std::optional<double> h_target;
  std::optional<double> w_target;
  double p_a = 0.0;   ///< true P_A of the population
  std::optional<double> s_ab;  ///< true s*_AB
  std::optional<double> h;
  std::optional<double> w;
  double p_diff = 0.0;
  double p_miss_a = 0.0;
  double p_miss_b = 0.0;
  double p_err_ab = 0.0;
  double p_err_ba = 0.0;
  std::size_t seeds = 0;
  std::size_t coupons = 0;
  std::size_t m = 0;
};

struct ResultRow {
  CellParams params;
  std::string estimator;  ///< estimator name or "bs_<method>" for coverage rows
  std::optional<double> bias;
  std::optional<double> sd;
  std::optional<double> rmse;
  std::optional<double> p_best;
  std::size_t n_undefined = 0;
  std::optional<double> ci_coverage;
  std::optional<double> mean;
};

/// One raw estimate, kept for distribution plots.
struct EstimateRecord {
  std::size_t cell;
  std::size_t replication;
  std::string estimator;
  std::optional<double> value;
  double truth;
};

struct ExperimentResults {
  std::vector<ResultRow> rows;
  std::vector<EstimateRecord> estimates;
};

/// Runs every grid cell. Randomness flows from streams keyed by
/// (master_seed, cell, replication), so the output is identical for any
/// worker count. Cells whose tuning fails are emitted with status
/// tuning_failed and no metrics.
ExperimentResults run_experiment(const ExperimentSpec& spec);

/// Results CSV: fixed column order, 6 significant digits, empty fields for
/// missing values.
void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out);
std::vector<ResultRow> read_results_csv(std::istream& in);
void write_estimates_csv(const std::vector<EstimateRecord>& records, std::ostream& out);

}  // namespace rdslab
