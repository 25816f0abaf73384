#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rdslab {

/// A header plus rows of raw string fields. Fields never contain commas.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> find(std::string_view column) const;
  /// Throws ValidationError when the column is absent.
  std::size_t index(std::string_view column) const;
  bool has(std::string_view column) const { return find(column).has_value(); }
};

/// Throws ValidationError on ragged rows or an empty input.
CsvTable read_csv(std::istream& in, std::string_view name = "csv");
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace rdslab
