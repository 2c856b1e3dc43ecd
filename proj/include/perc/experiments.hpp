#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perc/report.hpp"

namespace perc {

struct ExperimentConfig {
  std::string experiment;
  std::string domain = "triangle";
  int size = 0;             // 0 selects the experiment default
  std::vector<int> sizes;   // empty selects the experiment default
  std::uint64_t trials = 0; // 0 selects the experiment default
  std::uint64_t seed = 1;
  int workers = 1;
  double confidence = 0.0;  // 0 selects 0.999 for oracle comparisons, 0.99 otherwise
  std::string out = ".";
  std::vector<std::string> formats = {"json", "csv", "svg"};
  // Experiment parameters.
  std::vector<double> xs;           // cardy: x positions on bc as fractions of |bc|
  int alpha = -1;                   // field: -1 for all three
  std::vector<double> lengths;      // clusters
  int rows = 64;                    // clusters
  int r = 4;                        // arms
  std::vector<int> radii;           // arms: outer radii
  std::vector<std::string> patterns;  // arms
  std::optional<double> synthetic_exponent;  // dimension: statistic N^e instead of simulation
  int limit = 26;                   // oracle-suite enumeration limit

  // Every field.
  nlohmann::ordered_json to_json() const;
  // Fields that determine the statistical output (no workers, paths, formats).
  nlohmann::ordered_json statistical_json() const;
};

// Fills experiment defaults for zero/empty fields.
ExperimentConfig resolve_defaults(ExperimentConfig cfg);

struct ExperimentOutput {
  Report report;
  std::vector<std::pair<std::string, std::string>> csv;  // file name, contents
  std::vector<std::pair<std::string, std::string>> svg;
};

const std::vector<std::string>& experiment_names();

// Runs the named experiment. Throws std::invalid_argument on configuration
// errors and EnumerationSizeError when an exact enumeration is too large.
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

// Writes the requested formats under cfg.out; returns the written paths.
std::vector<std::string> write_outputs(const ExperimentConfig& cfg, const ExperimentOutput& out);

}  // namespace perc
