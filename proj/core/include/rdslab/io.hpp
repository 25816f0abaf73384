#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rdslab/network.hpp"
#include "rdslab/rds.hpp"

namespace rdslab {

/// A network read from text files plus the external id of every dense node.
struct IngestedNetwork {
  Network network;
  std::vector<std::string> ids;  ///< ids[node] = id used in the files
};

/// Edge file: one edge per line, two whitespace-separated ids and an optional
/// weight (all lines or none). Attribute file: id and "A"/"B" per line. Blank
/// lines and lines starting with '#' are skipped. Dense ids follow the order
/// of the attribute file. Throws ValidationError with "<name>:<line>: ..." for
/// malformed lines, self-loops, duplicate edges and ids that appear in only
/// one of the two files.
IngestedNetwork parse_network(std::istream& edges, std::istream& attrs,
                              std::string_view edge_name = "edges",
                              std::string_view attr_name = "attrs");
IngestedNetwork ingest_network(const std::filesystem::path& edge_path,
                               const std::filesystem::path& attr_path);

/// Writes the two files read by parse_network. Node ids are written as
/// numbers unless `ids` is non-empty; weights use the shortest exact form.
void write_network(const Network& net, std::ostream& edges, std::ostream& attrs,
                   std::span<const std::string> ids = {});
void write_network(const Network& net, const std::filesystem::path& edge_path,
                   const std::filesystem::path& attr_path, std::span<const std::string> ids = {});

inline constexpr std::string_view kRdsCsvHeader =
    "respondent_id,wave,recruiter_id,group,reported_degree,reported_n_A,reported_n_B";

/// Field data in the RDS CSV format. Node ids are the row indices; true
/// degree and group mirror the reported ones. Throws ValidationError naming
/// the CSV line on any invariant violation.
RdsSample parse_rds_data(std::istream& in, std::string_view name = "sample");
RdsSample ingest_rds_data(const std::filesystem::path& path);

/// Writes a sample in the RDS CSV format. A node that appears more than once
/// (sampling with replacement) gets "#2", "#3", ... appended to its id.
void write_rds_sample(const RdsSample& sample, std::ostream& out);

}  // namespace rdslab
