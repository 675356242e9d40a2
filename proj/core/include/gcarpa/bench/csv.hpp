#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gcarpa/operators.hpp"

namespace gcarpa::bench {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Throws InputError when the row width differs from the header.
  void add_row(std::vector<std::string> row);
  bool operator==(const CsvTable&) const = default;
};

/// Shortest decimal form that parses back to the same double.
std::string format_real(double v);
double parse_real(std::string_view text);

std::string to_csv_text(const CsvTable& t);
CsvTable parse_csv_text(std::string_view text);

void write_csv(const std::filesystem::path& path, const CsvTable& t);
CsvTable read_csv(const std::filesystem::path& path);

/// k,fpr,feas,support with k starting at 1; missing columns are left empty.
CsvTable run_table(const operators::RunRecord& rec);

}  // namespace gcarpa::bench
