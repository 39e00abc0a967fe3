#pragma once

// Machine-readable experiment reports.
//
// CSV output is a header row of column names followed by one row per grid
// point; NaN cells are left empty. JSON output is an object with the fields
// name, version, master_seed, wall_clock_seconds, parameters, summary and
// rows (one object per row, keyed by column name).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hierperc/version.hpp"

namespace hierperc {

using ReportValue = std::variant<bool, std::int64_t, double, std::string>;
using ReportFields = std::vector<std::pair<std::string, ReportValue>>;

struct ExperimentReport {
  std::string name;
  std::string version = kVersion;
  std::uint64_t master_seed = 0;
  double wall_clock_seconds = 0.0;
  ReportFields parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  ReportFields summary;

  /// Throws std::out_of_range for an unknown column.
  std::size_t column_index(std::string_view column) const;
  double at(std::size_t row, std::string_view column) const;
  std::vector<double> column(std::string_view column) const;

  /// Throws std::out_of_range for an unknown key.
  const ReportValue& summary_value(std::string_view key) const;
  double summary_number(std::string_view key) const;
  bool summary_flag(std::string_view key) const;
  std::string summary_text(std::string_view key) const;
};

void write_csv(std::ostream& out, const ExperimentReport& report);
void write_json(std::ostream& out, const ExperimentReport& report);

}  // namespace hierperc
