#include "rdslab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rdslab/errors.hpp"
#include "text_util.hpp"

namespace rdslab {

std::string_view to_string(PlotKind k) noexcept {
  switch (k) {
    case PlotKind::heatmap: return "heatmap";
    case PlotKind::histogram: return "histogram";
    case PlotKind::boxplot: return "boxplot";
    case PlotKind::line: return "line";
  }
  return "";
}

std::optional<PlotKind> parse_plot_kind(std::string_view s) noexcept {
  for (PlotKind k : {PlotKind::heatmap, PlotKind::histogram, PlotKind::boxplot, PlotKind::line})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

std::vector<std::string> plot_schema(PlotKind k) {
  switch (k) {
    case PlotKind::heatmap: return {"estimator", "bias", "h_target|p_miss_a", "w_target|p_miss_b"};
    case PlotKind::histogram: return {"estimator", "value", "truth"};
    case PlotKind::boxplot: return {"estimator", "value"};
    case PlotKind::line: return {"estimator", "p_diff", "mean", "p_a"};
  }
  return {};
}

namespace {

double quantile7(const std::vector<double>& sorted, double q) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

BoxStats box_stats(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("box_stats needs at least one value");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  BoxStats b{quantile7(v, 0.25), quantile7(v, 0.5), quantile7(v, 0.75), 0.0, 0.0, {}};
  const double iqr = b.q3 - b.q1;
  const double lo_fence = b.q1 - 1.5 * iqr;
  const double hi_fence = b.q3 + 1.5 * iqr;
  b.whisker_low = b.q1;
  b.whisker_high = b.q3;
  for (double x : v) {
    if (x < lo_fence || x > hi_fence) {
      b.outliers.push_back(x);
      continue;
    }
    b.whisker_low = std::min(b.whisker_low, x);
    b.whisker_high = std::max(b.whisker_high, x);
  }
  return b;
}

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 150;
constexpr double kTop = 40;
constexpr double kBottom = 60;
constexpr const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d"};

std::string f2(double v) { return text::fixed(v, 2); }

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

[[noreturn]] void schema_error(PlotKind kind, std::string_view detail) {
  std::string cols;
  for (const auto& c : plot_schema(kind)) cols += (cols.empty() ? "" : ", ") + c;
  throw ValidationError(std::string(to_string(kind)) + " plot: " + std::string(detail) +
                        "; expected columns: " + cols);
}

std::size_t require(const CsvTable& t, PlotKind kind, std::string_view column) {
  if (auto i = t.find(column)) return *i;
  schema_error(kind, "missing column '" + std::string(column) + "'");
}

double number(const std::string& s, PlotKind kind, std::string_view column) {
  auto v = text::parse_double(s);
  if (!v) schema_error(kind, "non-numeric value '" + s + "' in column '" + std::string(column) + "'");
  return *v;
}

class Svg {
 public:
  Svg(std::string_view title) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f2(kWidth) << "\" height=\"" << f2(kHeight)
         << "\" viewBox=\"0 0 " << f2(kWidth) << ' ' << f2(kHeight) << "\" font-family=\"sans-serif\">\n";
    out_ << "<rect x=\"0\" y=\"0\" width=\"" << f2(kWidth) << "\" height=\"" << f2(kHeight)
         << "\" fill=\"white\"/>\n";
    if (!title.empty()) text(kWidth / 2, 24, title, 14, "middle");
  }

  void rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke = "none") {
    out_ << "<rect x=\"" << f2(x) << "\" y=\"" << f2(y) << "\" width=\"" << f2(w) << "\" height=\"" << f2(h)
         << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
  }
  void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width = 1,
            bool dashed = false) {
    out_ << "<line x1=\"" << f2(x1) << "\" y1=\"" << f2(y1) << "\" x2=\"" << f2(x2) << "\" y2=\"" << f2(y2)
         << "\" stroke=\"" << stroke << "\" stroke-width=\"" << f2(width) << '"'
         << (dashed ? " stroke-dasharray=\"5,4\"" : "") << "/>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, std::string_view stroke) {
    out_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2.00\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      out_ << (i ? " " : "") << f2(pts[i].first) << ',' << f2(pts[i].second);
    out_ << "\"/>\n";
  }
  void circle(double x, double y, double r, std::string_view fill) {
    out_ << "<circle cx=\"" << f2(x) << "\" cy=\"" << f2(y) << "\" r=\"" << f2(r) << "\" fill=\"" << fill
         << "\"/>\n";
  }
  void text(double x, double y, std::string_view s, int size = 11, std::string_view anchor = "start") {
    out_ << "<text x=\"" << f2(x) << "\" y=\"" << f2(y) << "\" font-size=\"" << size << "\" text-anchor=\""
         << anchor << "\">" << escape(s) << "</text>\n";
  }
  void vtext(double x, double y, std::string_view s, int size = 12) {
    out_ << "<text x=\"" << f2(x) << "\" y=\"" << f2(y) << "\" font-size=\"" << size
         << "\" text-anchor=\"middle\" transform=\"rotate(-90 " << f2(x) << ' ' << f2(y) << ")\">" << escape(s)
         << "</text>\n";
  }
  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
};

struct Scale {
  double d0, d1, r0, r1;
  double operator()(double v) const { return d1 == d0 ? (r0 + r1) / 2 : r0 + (v - d0) / (d1 - d0) * (r1 - r0); }
};

// Pads a degenerate or tight range so marks stay inside the frame.
std::pair<double, double> padded(double lo, double hi) {
  if (hi - lo < 1e-12) return {lo - 0.05, hi + 0.05};
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

// Tick step of 1, 2 or 5 times a power of ten giving about `target` ticks.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

std::vector<double> ticks(double lo, double hi) {
  const double step = nice_step(hi - lo, 5);
  std::vector<double> out;
  for (double k = std::ceil(lo / step - 1e-9); k * step <= hi + step * 1e-9; k += 1.0) {
    const double v = k * step;
    out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
  }
  return out;
}

void axes(Svg& svg, const Scale& x, const Scale& y, std::string_view xlabel, std::string_view ylabel) {
  const double bottom = kHeight - kBottom;
  svg.line(kLeft, bottom, kWidth - kRight, bottom, "black");
  svg.line(kLeft, kTop, kLeft, bottom, "black");
  for (double xv : ticks(x.d0, x.d1)) {
    svg.line(x(xv), bottom, x(xv), bottom + 4, "black");
    svg.text(x(xv), bottom + 16, text::significant(xv, 6), 10, "middle");
  }
  for (double yv : ticks(y.d0, y.d1)) {
    svg.line(kLeft - 4, y(yv), kLeft, y(yv), "black");
    svg.text(kLeft - 6, y(yv) + 3, text::significant(yv, 6), 10, "end");
  }
  svg.text((kLeft + kWidth - kRight) / 2, kHeight - 20, xlabel, 12, "middle");
  svg.vtext(20, (kTop + bottom) / 2, ylabel);
}

std::string pick_estimator(const CsvTable& t, std::size_t est_col, const PlotOptions& opts, PlotKind kind) {
  if (!opts.estimator.empty()) {
    for (const auto& r : t.rows)
      if (r[est_col] == opts.estimator) return opts.estimator;
    schema_error(kind, "no rows for estimator '" + opts.estimator + "'");
  }
  for (const auto& r : t.rows)
    if (r[est_col].rfind("bs_", 0) != 0) return r[est_col];
  schema_error(kind, "no estimator rows");
}

// Numeric sort with empty labels first.
void sort_labels(std::vector<std::string>& labels) {
  std::sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
    const auto da = text::parse_double(a);
    const auto db = text::parse_double(b);
    if (da && db) return *da < *db;
    if (da != db) return !da.has_value();
    return a < b;
  });
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
}

std::string heat_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const auto r = static_cast<int>(std::lround(255 - t * (255 - 178)));
  const auto g = static_cast<int>(std::lround(255 - t * (255 - 24)));
  const auto b = static_cast<int>(std::lround(255 - t * (255 - 43)));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string heatmap(const CsvTable& t, const PlotOptions& opts) {
  constexpr PlotKind kind = PlotKind::heatmap;
  const std::size_t est = require(t, kind, "estimator");
  const std::size_t bias = require(t, kind, "bias");
  std::string xname = "h_target", yname = "w_target";
  const bool has_hw = t.has("h_target") && t.has("w_target");
  const bool has_miss = t.has("p_miss_a") && t.has("p_miss_b");
  if (!has_hw && !has_miss) schema_error(kind, "no (h_target, w_target) or (p_miss_a, p_miss_b) grid");
  if (has_miss) {
    std::vector<std::string> pairs;
    for (const auto& r : t.rows) pairs.push_back(r[t.index("p_miss_a")] + "/" + r[t.index("p_miss_b")]);
    std::sort(pairs.begin(), pairs.end());
    if (!has_hw || std::unique(pairs.begin(), pairs.end()) - pairs.begin() > 1) {
      xname = "p_miss_a";
      yname = "p_miss_b";
    }
  }
  const std::size_t xc = t.index(xname);
  const std::size_t yc = t.index(yname);
  const std::string estimator = pick_estimator(t, est, opts, kind);

  // One p_diff slice per map; the other cell parameters are the axes.
  const auto pd = t.find("p_diff");
  std::optional<double> slice = opts.p_diff;
  std::set<std::string> slices;
  for (const auto& r : t.rows)
    if (pd && r[est] == estimator) {
      slices.insert(r[*pd]);
      if (!slice) slice = number(r[*pd], kind, "p_diff");
    }

  std::vector<std::string> xs, ys;
  std::map<std::pair<std::string, std::string>, std::optional<double>> cells;
  for (const auto& r : t.rows) {
    if (r[est] != estimator) continue;
    if (pd && number(r[*pd], kind, "p_diff") != *slice) continue;
    xs.push_back(r[xc]);
    ys.push_back(r[yc]);
    const auto [_, fresh] = cells.emplace(
        std::pair{r[xc], r[yc]}, r[bias].empty() ? std::nullopt : std::optional(number(r[bias], kind, "bias")));
    if (!fresh) {
      throw ValidationError("heatmap plot: several rows for " + xname + "=" + r[xc] + ", " + yname + "=" + r[yc] +
                            "; the table varies a parameter other than the axes and p_diff");
    }
  }
  if (cells.empty()) throw ValidationError("heatmap plot: no rows for estimator '" + estimator + "' at that p_diff");
  sort_labels(xs);
  sort_labels(ys);
  double vmax = 0.0;
  for (const auto& [_, v] : cells)
    if (v) vmax = std::max(vmax, *v);

  std::string title = opts.title;
  if (title.empty()) {
    title = "bias of " + estimator;
    if (slices.size() > 1) title += " at p_diff " + text::significant(*slice, 6);
  }
  Svg svg(title);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double cw = plot_w / static_cast<double>(xs.size());
  const double ch = plot_h / static_cast<double>(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const double x = kLeft + cw * static_cast<double>(i);
      const double y = kTop + plot_h - ch * static_cast<double>(j + 1);
      auto it = cells.find({xs[i], ys[j]});
      if (it == cells.end()) continue;
      const auto& v = it->second;
      svg.rect(x, y, cw, ch, v ? heat_color(vmax > 0 ? *v / vmax : 0.0) : "#cccccc", "white");
      svg.text(x + cw / 2, y + ch / 2 + 4, v ? text::fixed(*v, 3) : "n/a", 11, "middle");
    }
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    svg.text(kLeft + cw * (static_cast<double>(i) + 0.5), kHeight - kBottom + 16, xs[i].empty() ? "-" : xs[i], 10,
             "middle");
  for (std::size_t j = 0; j < ys.size(); ++j)
    svg.text(kLeft - 6, kTop + plot_h - ch * (static_cast<double>(j) + 0.5) + 3, ys[j].empty() ? "-" : ys[j], 10,
             "end");
  svg.text((kLeft + kWidth - kRight) / 2, kHeight - 20, xname, 12, "middle");
  svg.vtext(20, (kTop + kHeight - kBottom) / 2, yname);
  svg.text(kWidth - kRight + 10, kTop + 12, "max " + text::fixed(vmax, 3), 10);
  return svg.finish();
}

std::vector<double> values_for(const CsvTable& t, std::size_t est, std::size_t val, const std::string& estimator,
                               PlotKind kind) {
  std::vector<double> out;
  for (const auto& r : t.rows)
    if (r[est] == estimator && !r[val].empty()) out.push_back(number(r[val], kind, "value"));
  return out;
}

std::string histogram(const CsvTable& t, const PlotOptions& opts) {
  constexpr PlotKind kind = PlotKind::histogram;
  const std::size_t est = require(t, kind, "estimator");
  const std::size_t val = require(t, kind, "value");
  const std::size_t tru = require(t, kind, "truth");
  const std::string estimator = pick_estimator(t, est, opts, kind);
  const auto values = values_for(t, est, val, estimator, kind);
  if (values.empty()) schema_error(kind, "no defined values for '" + estimator + "'");
  double truth = 0.0;
  for (const auto& r : t.rows)
    if (r[est] == estimator) {
      truth = number(r[tru], kind, "truth");
      break;
    }

  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  const auto [lo, hi] = padded(std::min(*mn, truth), std::max(*mx, truth));
  const std::size_t bins = std::max<std::size_t>(opts.bins, 1);
  std::vector<std::size_t> counts(bins, 0);
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
    ++counts[std::min(b, bins - 1)];
  }
  const double top = static_cast<double>(*std::max_element(counts.begin(), counts.end()));
  const Scale x{lo, hi, kLeft, kWidth - kRight};
  const Scale y{0.0, top, kHeight - kBottom, kTop};

  Svg svg(opts.title.empty() ? "distribution of " + estimator : opts.title);
  axes(svg, x, y, "estimate", "count");
  const double bw = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    if (counts[b] == 0) continue;
    const double x0 = x(lo + bw * static_cast<double>(b));
    const double x1 = x(lo + bw * static_cast<double>(b + 1));
    const double y0 = y(static_cast<double>(counts[b]));
    svg.rect(x0, y0, x1 - x0, kHeight - kBottom - y0, kPalette[0], "white");
  }
  svg.line(x(truth), kTop, x(truth), kHeight - kBottom, "red", 2, true);
  svg.text(kWidth - kRight + 10, kTop + 12, "truth " + text::fixed(truth, 3), 10);
  svg.text(kWidth - kRight + 10, kTop + 28, "n " + std::to_string(values.size()), 10);
  return svg.finish();
}

std::string boxplot(const CsvTable& t, const PlotOptions& opts) {
  constexpr PlotKind kind = PlotKind::boxplot;
  const std::size_t est = require(t, kind, "estimator");
  const std::size_t val = require(t, kind, "value");
  // One box per estimator, or just the requested one.
  std::vector<std::string> names;
  if (!opts.estimator.empty()) names.push_back(pick_estimator(t, est, opts, kind));
  else
    for (const auto& r : t.rows)
      if (std::find(names.begin(), names.end(), r[est]) == names.end()) names.push_back(r[est]);
  std::vector<std::pair<std::string, BoxStats>> boxes;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& n : names) {
    const auto v = values_for(t, est, val, n, kind);
    if (v.empty()) continue;
    boxes.emplace_back(n, box_stats(v));
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    lo = std::min(lo, *mn);
    hi = std::max(hi, *mx);
  }
  if (boxes.empty()) schema_error(kind, "no defined values");
  std::optional<double> truth;
  if (auto tc = t.find("truth"); tc && !t.rows.front()[*tc].empty()) {
    truth = number(t.rows.front()[*tc], kind, "truth");
    lo = std::min(lo, *truth);
    hi = std::max(hi, *truth);
  }
  const auto [y0, y1] = padded(lo, hi);
  const Scale y{y0, y1, kHeight - kBottom, kTop};

  Svg svg(opts.title.empty() ? "estimates" : opts.title);
  const double bottom = kHeight - kBottom;
  svg.line(kLeft, bottom, kWidth - kRight, bottom, "black");
  svg.line(kLeft, kTop, kLeft, bottom, "black");
  for (double yv : ticks(y0, y1)) {
    svg.line(kLeft - 4, y(yv), kLeft, y(yv), "black");
    svg.text(kLeft - 6, y(yv) + 3, text::significant(yv, 6), 10, "end");
  }
  svg.vtext(20, (kTop + bottom) / 2, "estimate");
  const double slot = (kWidth - kLeft - kRight) / static_cast<double>(boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto& [name, b] = boxes[i];
    const double cx = kLeft + slot * (static_cast<double>(i) + 0.5);
    const double half = std::min(slot * 0.3, 40.0);
    const char* color = kPalette[i % std::size(kPalette)];
    svg.line(cx, y(b.whisker_low), cx, y(b.q1), "black");
    svg.line(cx, y(b.q3), cx, y(b.whisker_high), "black");
    svg.line(cx - half / 2, y(b.whisker_low), cx + half / 2, y(b.whisker_low), "black");
    svg.line(cx - half / 2, y(b.whisker_high), cx + half / 2, y(b.whisker_high), "black");
    svg.rect(cx - half, y(b.q3), 2 * half, y(b.q1) - y(b.q3), color, "black");
    svg.line(cx - half, y(b.median), cx + half, y(b.median), "black", 2);
    for (double o : b.outliers) svg.circle(cx, y(o), 2, "black");
    svg.text(cx, bottom + 16, name, 10, "middle");
  }
  if (truth) {
    svg.line(kLeft, y(*truth), kWidth - kRight, y(*truth), "red", 1.5, true);
    svg.text(kWidth - kRight + 10, y(*truth) + 3, "truth " + text::fixed(*truth, 3), 10);
  }
  return svg.finish();
}

std::string line_plot(const CsvTable& t, const PlotOptions& opts) {
  constexpr PlotKind kind = PlotKind::line;
  const std::size_t est = require(t, kind, "estimator");
  const std::size_t pd = require(t, kind, "p_diff");
  const std::size_t mean = require(t, kind, "mean");
  const std::size_t pa = require(t, kind, "p_a");

  // Only rows sharing the first plotted row's other cell parameters.
  std::vector<std::size_t> fixed;
  for (const char* c : {"h_target", "w_target", "p_miss_a", "p_miss_b", "p_err_ab", "p_err_ba", "seeds", "coupons"})
    if (auto i = t.find(c)) fixed.push_back(*i);
  auto slice_key = [&](const std::vector<std::string>& r) {
    std::string k;
    for (std::size_t i : fixed) k += r[i] + ',';
    return k;
  };
  std::optional<std::string> slice;

  std::vector<std::string> names;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  std::optional<double> truth;
  for (const auto& r : t.rows) {
    if (r[mean].empty() || r[est].rfind("bs_", 0) == 0 || r[est] == "s_ab" || r[est] == "s_ab_ego") continue;
    if (!opts.estimator.empty() && r[est] != opts.estimator) continue;
    if (!slice) slice = slice_key(r);
    if (slice_key(r) != *slice) continue;
    const double x = number(r[pd], kind, "p_diff");
    const double y = number(r[mean], kind, "mean");
    if (!series.contains(r[est])) names.push_back(r[est]);
    series[r[est]].emplace_back(x, y);
    if (!truth) truth = number(r[pa], kind, "p_a");
    xlo = std::min(xlo, x);
    xhi = std::max(xhi, x);
    ylo = std::min({ylo, y, *truth});
    yhi = std::max({yhi, y, *truth});
  }
  if (names.empty()) schema_error(kind, "no rows with a mean estimate");
  const auto [x0, x1] = padded(xlo, xhi);
  const auto [y0, y1] = padded(ylo, yhi);
  const Scale x{x0, x1, kLeft, kWidth - kRight};
  const Scale y{y0, y1, kHeight - kBottom, kTop};

  Svg svg(opts.title.empty() ? "mean estimate vs p_diff" : opts.title);
  axes(svg, x, y, "p_diff", "mean estimate");
  svg.line(kLeft, y(*truth), kWidth - kRight, y(*truth), "red", 1.5, true);
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto pts = series[names[i]];
    std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<double, double>> px;
    for (auto [a, b] : pts) px.emplace_back(x(a), y(b));
    const char* color = kPalette[i % std::size(kPalette)];
    svg.polyline(px, color);
    for (auto [a, b] : px) svg.circle(a, b, 3, color);
    const double ly = kTop + 14 + 16 * static_cast<double>(i);
    svg.line(kWidth - kRight + 10, ly - 4, kWidth - kRight + 30, ly - 4, color, 2);
    svg.text(kWidth - kRight + 34, ly, names[i], 10);
  }
  svg.text(kWidth - kRight + 10, kTop + 14 + 16 * static_cast<double>(names.size()), "truth (dashed)", 10);
  return svg.finish();
}

}  // namespace

std::string render_svg(const CsvTable& table, PlotKind kind, const PlotOptions& opts) {
  if (table.rows.empty()) schema_error(kind, "table has no rows");
  switch (kind) {
    case PlotKind::heatmap: return heatmap(table, opts);
    case PlotKind::histogram: return histogram(table, opts);
    case PlotKind::boxplot: return boxplot(table, opts);
    case PlotKind::line: return line_plot(table, opts);
  }
  return {};
}

void emit_plot(const CsvTable& table, PlotKind kind, const std::filesystem::path& out, const PlotOptions& opts) {
  const std::string svg = render_svg(table, kind, opts);
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error("cannot write " + out.string());
  f << svg;
}

}  // namespace rdslab
