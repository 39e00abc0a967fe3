#include "hierperc/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hierperc {

namespace {

std::string format_cell(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json to_json(const ReportValue& value) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
        }
        return v;
      },
      value);
}

nlohmann::json to_json(const ReportFields& fields) {
  nlohmann::json object = nlohmann::json::object();
  for (const auto& [key, value] : fields) object[key] = to_json(value);
  return object;
}

}  // namespace

std::size_t ExperimentReport::column_index(std::string_view name_) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name_) return i;
  }
  throw std::out_of_range("report '" + name + "' has no column '" + std::string(name_) + "'");
}

double ExperimentReport::at(std::size_t row, std::string_view column_name) const {
  return rows.at(row).at(column_index(column_name));
}

std::vector<double> ExperimentReport::column(std::string_view column_name) const {
  const std::size_t index = column_index(column_name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.at(index));
  return out;
}

const ReportValue& ExperimentReport::summary_value(std::string_view key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return v;
  }
  throw std::out_of_range("report '" + name + "' has no summary entry '" + std::string(key) + "'");
}

double ExperimentReport::summary_number(std::string_view key) const {
  const ReportValue& v = summary_value(key);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  if (const auto* b = std::get_if<bool>(&v)) return *b ? 1.0 : 0.0;
  throw std::out_of_range("summary entry '" + std::string(key) + "' is not numeric");
}

bool ExperimentReport::summary_flag(std::string_view key) const { return std::get<bool>(summary_value(key)); }

std::string ExperimentReport::summary_text(std::string_view key) const {
  return std::get<std::string>(summary_value(key));
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
  for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << report.columns[i];
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const ExperimentReport& report) {
  nlohmann::json doc;
  doc["name"] = report.name;
  doc["version"] = report.version;
  doc["master_seed"] = report.master_seed;
  doc["wall_clock_seconds"] = report.wall_clock_seconds;
  doc["parameters"] = to_json(report.parameters);
  doc["summary"] = to_json(report.summary);
  doc["columns"] = report.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json object = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) {
      object[report.columns[i]] = std::isfinite(row[i]) ? nlohmann::json(row[i]) : nlohmann::json(nullptr);
    }
    rows.push_back(std::move(object));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

}  // namespace hierperc
