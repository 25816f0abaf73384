#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

#include "rdslab/csv.hpp"
#include "rdslab/errors.hpp"
#include "rdslab/plot.hpp"

using namespace rdslab;

namespace {

const std::filesystem::path kData = RDSLAB_TEST_DATA;

CsvTable table(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("single-cell heatmap") {
  const std::string svg =
      render_svg(table("estimator,bias,h_target,w_target\nrdsi,0.25,0.3,1.5\n"), PlotKind::heatmap);
  // Background plus one cell.
  CHECK(count(svg, "<rect") == 2);
  CHECK(svg.find(">0.250<") != std::string::npos);
}

TEST_CASE("boxplot of two estimates has its median halfway") {
  const BoxStats b = box_stats(std::vector<double>{0.3, 0.5});
  CHECK(b.median == doctest::Approx(0.4));
  CHECK(b.q1 == doctest::Approx(0.35));
  CHECK(b.q3 == doctest::Approx(0.45));
  CHECK(b.whisker_low == 0.3);
  CHECK(b.whisker_high == 0.5);
  CHECK(b.outliers.empty());

  // Median line sits midway between the whisker caps.
  const std::string svg = render_svg(table("estimator,value\nrdsi,0.3\nrdsi,0.5\n"), PlotKind::boxplot);
  const std::regex horizontal(
      R"re(<line x1="([0-9.]+)" y1="([0-9.]+)" x2="[0-9.]+" y2="\2" stroke="black" stroke-width="([0-9.]+)"/>)re");
  std::vector<double> caps;
  std::optional<double> median;
  for (std::sregex_iterator it(svg.begin(), svg.end(), horizontal), end; it != end; ++it) {
    if (std::stod((*it)[1]) <= 70.0) continue;  // axis and ticks
    const double y = std::stod((*it)[2]);
    if ((*it)[3] == "2.00") median = y;
    else caps.push_back(y);
  }
  REQUIRE(caps.size() == 2);
  REQUIRE(median.has_value());
  CHECK(*median == doctest::Approx((caps[0] + caps[1]) / 2).epsilon(1e-4));
}

TEST_CASE("box statistics flag outliers") {
  std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 100};
  const BoxStats b = box_stats(v);
  CHECK(b.median == 5.0);
  CHECK(b.q1 == 3.0);
  CHECK(b.q3 == 7.0);
  CHECK(b.whisker_high == 8.0);
  CHECK(b.outliers == std::vector<double>{100.0});
  CHECK_THROWS_AS(box_stats(std::vector<double>{}), InvalidArgument);
}

TEST_CASE("schema errors list the expected columns") {
  try {
    render_svg(table("estimator,value\nrdsi,0.3\n"), PlotKind::heatmap);
    FAIL("no error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("estimator") != std::string::npos);
    CHECK(msg.find("bias") != std::string::npos);
    CHECK(msg.find("h_target|p_miss_a") != std::string::npos);
  }
  CHECK_THROWS_AS(render_svg(table("estimator,truth\nrdsi,0.3\n"), PlotKind::histogram), ValidationError);
  CHECK_THROWS_AS(render_svg(table("estimator,value\nrdsi,abc\n"), PlotKind::boxplot), ValidationError);
  CHECK_THROWS_AS(render_svg(table("estimator,p_diff,mean\nrdsi,0,0.3\n"), PlotKind::line), ValidationError);
  PlotOptions o;
  o.estimator = "nope";
  CHECK_THROWS_AS(render_svg(table("estimator,value\nrdsi,0.3\n"), PlotKind::boxplot, o), ValidationError);
}

TEST_CASE("heatmap rejects rows that collide on one cell") {
  const std::string csv =
      "estimator,bias,h_target,w_target,p_err_ab\n"
      "rdsi,0.1,0,1,0\n"
      "rdsi,0.2,0,1,0.1\n";
  CHECK_THROWS_AS(render_svg(table(csv), PlotKind::heatmap), ValidationError);
}

TEST_CASE("heatmap slices by p_diff") {
  const std::string csv =
      "estimator,bias,h_target,w_target,p_diff\n"
      "rdsi,0.1,0,1,0\n"
      "rdsi,0.7,0,1,1\n";
  const std::string first = render_svg(table(csv), PlotKind::heatmap);
  CHECK(first.find(">0.100<") != std::string::npos);
  CHECK(first.find(">0.700<") == std::string::npos);
  PlotOptions o;
  o.p_diff = 1.0;
  CHECK(render_svg(table(csv), PlotKind::heatmap, o).find(">0.700<") != std::string::npos);
}

TEST_CASE("rendering is a pure function of the table") {
  const CsvTable t = read_csv(kData / "results_fixture.csv");
  CHECK(render_svg(t, PlotKind::heatmap) == render_svg(t, PlotKind::heatmap));
  CHECK(parse_plot_kind("line") == PlotKind::line);
  CHECK_FALSE(parse_plot_kind("pie").has_value());
}

// Golden files come from `rdslab plot` on the two fixtures (--estimator rdsi
// except for the boxplot). Inspect any regenerated file before replacing one.
TEST_CASE("golden files") {
  PlotOptions o;
  o.estimator = "rdsi";
  const CsvTable results = read_csv(kData / "results_fixture.csv");
  const CsvTable estimates = read_csv(kData / "estimates_fixture.csv");
  CHECK(render_svg(results, PlotKind::heatmap, o) == slurp(kData / "golden_heatmap.svg"));
  CHECK(render_svg(results, PlotKind::line, o) == slurp(kData / "golden_line.svg"));
  CHECK(render_svg(estimates, PlotKind::histogram, o) == slurp(kData / "golden_histogram.svg"));
  CHECK(render_svg(estimates, PlotKind::boxplot) == slurp(kData / "golden_boxplot.svg"));

  const auto out = std::filesystem::temp_directory_path() / "rdslab_plot_test.svg";
  emit_plot(results, PlotKind::heatmap, out, o);
  CHECK(slurp(out) == slurp(kData / "golden_heatmap.svg"));
  std::filesystem::remove(out);
}
