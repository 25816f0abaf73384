#include "rdslab/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "rdslab/errors.hpp"
#include "text_util.hpp"

namespace rdslab {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

bool skippable(std::string_view line) {
  const auto t = text::trim(line);
  return t.empty() || t.front() == '#';
}

}  // namespace

IngestedNetwork parse_network(std::istream& edges, std::istream& attrs, std::string_view edge_name,
                              std::string_view attr_name) {
  auto fail = [](std::string_view file, std::size_t line, const std::string& why) {
    return ValidationError(std::string(file) + ":" + std::to_string(line) + ": " + why);
  };

  IngestedNetwork out;
  std::unordered_map<std::string, NodeId> dense;
  std::vector<Group> groups;
  std::string line;
  for (std::size_t lineno = 1; std::getline(attrs, line); ++lineno) {
    if (skippable(line)) continue;
    const auto fields = text::split_ws(line);
    if (fields.size() != 2) throw fail(attr_name, lineno, "expected '<id> <A|B>'");
    const auto g = parse_group(fields[1]);
    if (!g) throw fail(attr_name, lineno, "group must be A or B, got '" + std::string(fields[1]) + "'");
    std::string id(fields[0]);
    if (dense.contains(id)) throw fail(attr_name, lineno, "duplicate id '" + id + "'");
    dense.emplace(id, static_cast<NodeId>(out.ids.size()));
    out.ids.push_back(std::move(id));
    groups.push_back(*g);
  }

  std::vector<Edge> list;
  std::unordered_set<std::uint64_t> seen;
  std::vector<char> touched(out.ids.size(), 0);
  int weighted = -1;
  for (std::size_t lineno = 1; std::getline(edges, line); ++lineno) {
    if (skippable(line)) continue;
    const auto fields = text::split_ws(line);
    if (fields.size() != 2 && fields.size() != 3)
      throw fail(edge_name, lineno, "expected '<id> <id> [weight]'");
    const int has_weight = fields.size() == 3 ? 1 : 0;
    if (weighted >= 0 && weighted != has_weight)
      throw fail(edge_name, lineno, "weight column present on some lines only");
    weighted = has_weight;

    NodeId ends[2];
    for (int k = 0; k < 2; ++k) {
      auto it = dense.find(std::string(fields[static_cast<std::size_t>(k)]));
      if (it == dense.end()) {
        throw fail(edge_name, lineno,
                   "node '" + std::string(fields[static_cast<std::size_t>(k)]) + "' missing from " +
                       std::string(attr_name));
      }
      ends[k] = it->second;
    }
    if (ends[0] == ends[1]) throw fail(edge_name, lineno, "self-loop on '" + std::string(fields[0]) + "'");
    const auto lo = std::min(ends[0], ends[1]);
    const auto hi = std::max(ends[0], ends[1]);
    if (!seen.insert((static_cast<std::uint64_t>(lo) << 32) | hi).second)
      throw fail(edge_name, lineno, "duplicate edge");
    double w = 1.0;
    if (has_weight) {
      auto parsed = text::parse_double(fields[2]);
      if (!parsed || !(*parsed > 0.0)) throw fail(edge_name, lineno, "weight must be a positive number");
      w = *parsed;
    }
    touched[ends[0]] = touched[ends[1]] = 1;
    list.push_back({ends[0], ends[1], w});
  }
  for (std::size_t v = 0; v < touched.size(); ++v) {
    if (!touched[v]) {
      throw ValidationError(std::string(attr_name) + ": node '" + out.ids[v] +
                            "' has no edges in " + std::string(edge_name));
    }
  }
  out.network = Network(out.ids.size(), list, std::move(groups), weighted == 1);
  return out;
}

IngestedNetwork ingest_network(const std::filesystem::path& edge_path,
                               const std::filesystem::path& attr_path) {
  auto edges = open_input(edge_path);
  auto attrs = open_input(attr_path);
  return parse_network(edges, attrs, edge_path.filename().string(), attr_path.filename().string());
}

void write_network(const Network& net, std::ostream& edges, std::ostream& attrs,
                   std::span<const std::string> ids) {
  auto name = [&](NodeId v) { return ids.empty() ? std::to_string(v) : ids[v]; };
  for (const Edge& e : net.edges()) {
    edges << name(e.u) << ' ' << name(e.v);
    if (net.weighted()) edges << ' ' << text::shortest(e.weight);
    edges << '\n';
  }
  for (NodeId v = 0; v < net.node_count(); ++v) attrs << name(v) << ' ' << to_char(net.group(v)) << '\n';
}

void write_network(const Network& net, const std::filesystem::path& edge_path,
                   const std::filesystem::path& attr_path, std::span<const std::string> ids) {
  auto edges = open_output(edge_path);
  auto attrs = open_output(attr_path);
  write_network(net, edges, attrs, ids);
}

RdsSample parse_rds_data(std::istream& in, std::string_view name) {
  auto fail = [&](std::size_t line, const std::string& why) {
    return ValidationError(std::string(name) + ":" + std::to_string(line) + ": " + why);
  };
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!text::trim(line).empty()) break;
  }
  if (text::trim(line) != kRdsCsvHeader) {
    throw fail(lineno, "expected header '" + std::string(kRdsCsvHeader) + "'");
  }

  RdsSample sample;
  std::unordered_map<std::string, std::size_t> row_of;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const auto f = text::split(text::trim(line), ',');
    if (f.size() != 7) throw fail(lineno, "expected 7 comma-separated fields");
    std::string id(text::trim(f[0]));
    if (id.empty()) throw fail(lineno, "empty respondent_id");
    if (row_of.contains(id)) throw fail(lineno, "duplicate respondent_id '" + id + "'");

    auto integer = [&](std::string_view field, const char* what) {
      auto v = text::parse_uint(text::trim(field));
      if (!v) throw fail(lineno, std::string(what) + " must be a non-negative integer");
      return *v;
    };
    Respondent r;
    r.node_id = static_cast<NodeId>(sample.respondents.size());
    r.wave = integer(f[1], "wave");
    const auto recruiter = text::trim(f[2]);
    const auto g = parse_group(text::trim(f[3]));
    if (!g) throw fail(lineno, "group must be A or B");
    r.true_group = *g;
    r.reported_degree = integer(f[4], "reported_degree");
    r.reported_n_a = integer(f[5], "reported_n_A");
    r.reported_n_b = integer(f[6], "reported_n_B");
    r.true_degree = r.reported_degree;

    if (r.reported_degree < 1) throw fail(lineno, "reported_degree must be at least 1");
    if (r.reported_n_a + r.reported_n_b != r.reported_degree)
      throw fail(lineno, "reported_n_A + reported_n_B must equal reported_degree");
    if (recruiter.empty()) {
      if (r.wave != 0) throw fail(lineno, "seed (empty recruiter_id) must have wave 0");
    } else {
      auto it = row_of.find(std::string(recruiter));
      if (it == row_of.end())
        throw fail(lineno, "recruiter '" + std::string(recruiter) + "' does not appear on an earlier row");
      const Respondent& parent = sample.respondents[it->second];
      if (r.wave != parent.wave + 1) throw fail(lineno, "wave must be the recruiter's wave plus one");
      r.recruiter = it->second;
      sample.recruitment_edges.emplace_back(parent.node_id, r.node_id);
    }
    row_of.emplace(std::move(id), sample.respondents.size());
    sample.respondents.push_back(r);
  }
  return sample;
}

RdsSample ingest_rds_data(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_rds_data(in, path.filename().string());
}

void write_rds_sample(const RdsSample& sample, std::ostream& out) {
  std::unordered_map<NodeId, std::size_t> occurrences;
  std::vector<std::string> ids;
  ids.reserve(sample.respondents.size());
  out << kRdsCsvHeader << '\n';
  for (const Respondent& r : sample.respondents) {
    const std::size_t k = ++occurrences[r.node_id];
    ids.push_back(k == 1 ? std::to_string(r.node_id) : std::to_string(r.node_id) + "#" + std::to_string(k));
    out << ids.back() << ',' << r.wave << ',' << (r.recruiter ? ids[*r.recruiter] : std::string()) << ','
        << to_char(r.true_group) << ',' << r.reported_degree << ',' << r.reported_n_a << ','
        << r.reported_n_b << '\n';
  }
}

}  // namespace rdslab
