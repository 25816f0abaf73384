#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rdslab/csv.hpp"

namespace rdslab {

enum class PlotKind { heatmap, histogram, boxplot, line };

std::string_view to_string(PlotKind k) noexcept;
std::optional<PlotKind> parse_plot_kind(std::string_view s) noexcept;

/// Columns a table must carry for each kind. Heatmaps accept either grid pair.
std::vector<std::string> plot_schema(PlotKind k);

struct PlotOptions {
  std::string estimator;  ///< heatmap/histogram filter; empty = first in the table
  /// Heatmap slice; defaults to the p_diff of the first matching row.
  std::optional<double> p_diff;
  std::size_t bins = 20;
  std::string title;
};

/// Tukey box: type-7 quartiles, whiskers at the most extreme points within
/// 1.5 IQR of the box.
struct BoxStats {
  double q1, median, q3, whisker_low, whisker_high;
  std::vector<double> outliers;
};

/// Throws InvalidArgument when `values` is empty.
BoxStats box_stats(std::span<const double> values);

/// Heatmap and line read the results CSV, histogram and boxplot the
/// estimates CSV. Throws ValidationError listing the expected columns when
/// the table does not fit. Output is a pure function of the input.
std::string render_svg(const CsvTable& table, PlotKind kind, const PlotOptions& opts = {});
void emit_plot(const CsvTable& table, PlotKind kind, const std::filesystem::path& out,
               const PlotOptions& opts = {});

}  // namespace rdslab
