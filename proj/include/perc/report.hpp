#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "perc/estimators.hpp"
#include "perc/lattice.hpp"

namespace perc {

inline constexpr const char* kReportSchema = "percolab-report/1";

// A declared acceptance threshold and whether the run met it. Advisory
// thresholds are reported but do not fail the run.
struct Threshold {
  std::string name;
  std::string rule;
  double value = 0.0;
  bool pass = false;
  bool advisory = false;
};

struct Report {
  std::string experiment;
  nlohmann::ordered_json config;  // statistical configuration, echoed in the body
  nlohmann::ordered_json body = nlohmann::ordered_json::object();
  std::vector<Threshold> thresholds;

  bool passed() const;
  // {"schema", "header": {timestamp, generator, config}, "body": {...}}. The
  // header echoes the full run configuration (workers, output paths); only it
  // depends on when and how the run was scheduled.
  nlohmann::ordered_json to_json(const std::string& timestamp, const nlohmann::ordered_json& run_config) const;
  nlohmann::ordered_json body_json() const;
};

std::string utc_timestamp();

// Comma-separated table with a header row; doubles in shortest round-trip form.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  CsvTable& row() {
    rows_.emplace_back();
    return *this;
  }
  CsvTable& add(const std::string& v);
  CsvTable& add(double v);
  CsvTable& add(std::int64_t v);
  CsvTable& add(std::uint64_t v);
  CsvTable& add(int v) { return add(static_cast<std::int64_t>(v)); }
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

std::string format_double(double v);

// Face-polygon heatmap of per-face values in [0,1]; NaN faces are skipped.
// Color map: linear in each channel from rgb(33,49,140) at 0 to
// rgb(253,231,37) at 1.
std::string field_svg(const TriangularDomain& d, const std::vector<double>& values, const std::string& title,
                      bool include_rim = false);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace perc
