#include <fstream>
#include <istream>
#include <ostream>

#include "rdslab/csv.hpp"
#include "rdslab/errors.hpp"
#include "rdslab/experiment.hpp"
#include "text_util.hpp"

namespace rdslab {

std::optional<std::size_t> CsvTable::find(std::string_view column) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == column) return i;
  return std::nullopt;
}

std::size_t CsvTable::index(std::string_view column) const {
  if (auto i = find(column)) return *i;
  throw ValidationError("missing column '" + std::string(column) + "'");
}

CsvTable read_csv(std::istream& in, std::string_view name) {
  CsvTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = text::trim(line);
    if (t.empty()) continue;
    std::vector<std::string> fields;
    for (auto f : text::split(t, ',')) fields.emplace_back(text::trim(f));
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ValidationError(std::string(name) + ":" + std::to_string(lineno) + ": expected " +
                            std::to_string(table.header.size()) + " fields, got " + std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (table.header.empty()) throw ValidationError(std::string(name) + ": empty file");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return read_csv(in, path.filename().string());
}

namespace {

constexpr const char* kResultColumns[] = {
    "cell",     "status",   "h_target", "w_target", "p_a",    "s_ab",        "h",           "w",
    "p_diff",   "p_miss_a", "p_miss_b", "p_err_ab", "p_err_ba", "seeds",      "coupons",     "m",
    "estimator", "bias",    "sd",       "rmse",     "p_best", "n_undefined", "ci_coverage", "mean"};

std::string num(double v) { return text::significant(v, 6); }
std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

}  // namespace

void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  bool first = true;
  for (const char* c : kResultColumns) {
    out << (first ? "" : ",") << c;
    first = false;
  }
  out << '\n';
  for (const ResultRow& r : rows) {
    const CellParams& p = r.params;
    out << p.cell << ',' << to_string(p.status) << ',' << num(p.h_target) << ',' << num(p.w_target) << ','
        << num(p.p_a) << ',' << num(p.s_ab) << ',' << num(p.h) << ',' << num(p.w) << ',' << num(p.p_diff) << ','
        << num(p.p_miss_a) << ',' << num(p.p_miss_b) << ',' << num(p.p_err_ab) << ',' << num(p.p_err_ba) << ','
        << p.seeds << ',' << p.coupons << ',' << p.m << ',' << r.estimator << ',' << num(r.bias) << ','
        << num(r.sd) << ',' << num(r.rmse) << ',' << num(r.p_best) << ',' << r.n_undefined << ','
        << num(r.ci_coverage) << ',' << num(r.mean) << '\n';
  }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
  const CsvTable table = read_csv(in, "results");
  std::vector<std::size_t> col;
  for (const char* c : kResultColumns) col.push_back(table.index(c));

  std::vector<ResultRow> rows;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& f = table.rows[i];
    const std::string where = "results:" + std::to_string(i + 2) + ": ";
    std::size_t next = 0;
    auto field = [&]() -> const std::string& { return f[col[next++]]; };
    auto opt = [&]() -> std::optional<double> {
      const std::string& s = field();
      if (s.empty()) return std::nullopt;
      auto v = text::parse_double(s);
      if (!v) throw ValidationError(where + "bad number '" + s + "'");
      return v;
    };
    auto req = [&]() {
      auto v = opt();
      if (!v) throw ValidationError(where + "missing value");
      return *v;
    };
    auto count = [&]() {
      auto v = text::parse_uint(field());
      if (!v) throw ValidationError(where + "bad count");
      return *v;
    };

    ResultRow r;
    CellParams& p = r.params;
    p.cell = count();
    const std::string& status = field();
    if (status == "ok") p.status = CellStatus::ok;
    else if (status == "tuning_failed") p.status = CellStatus::tuning_failed;
    else throw ValidationError(where + "bad status '" + status + "'");
    p.h_target = opt();
    p.w_target = opt();
    p.p_a = req();
    p.s_ab = opt();
    p.h = opt();
    p.w = opt();
    p.p_diff = req();
    p.p_miss_a = req();
    p.p_miss_b = req();
    p.p_err_ab = req();
    p.p_err_ba = req();
    p.seeds = count();
    p.coupons = count();
    p.m = count();
    r.estimator = field();
    r.bias = opt();
    r.sd = opt();
    r.rmse = opt();
    r.p_best = opt();
    r.n_undefined = count();
    r.ci_coverage = opt();
    r.mean = opt();
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_estimates_csv(const std::vector<EstimateRecord>& records, std::ostream& out) {
  out << "cell,replication,estimator,value,truth\n";
  for (const EstimateRecord& e : records) {
    out << e.cell << ',' << e.replication << ',' << e.estimator << ',' << num(e.value) << ',' << num(e.truth)
        << '\n';
  }
}

}  // namespace rdslab
