#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qchaos/core.hpp"

namespace qchaos::experiments {

inline constexpr const char* kVersion = "0.1.0";

// Raised for malformed configs (unknown experiment, missing or mistyped
// parameters); the launcher maps it to exit status 2, everything else to 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json metadata;  // config echo + code version
};

struct ParamSpec {
  std::string name;
  std::string type;  // "integer" | "number" | "string"
  bool required = true;
};

struct ExperimentInfo {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;
};

const std::vector<ExperimentInfo>& experimentRegistry();

// Structural validation only: experiment known, seed present, parameter
// names and JSON types as registered.  Throws ConfigError with the offending
// field named.
void validateConfig(const nlohmann::json& config);

// Dispatches to the owning module.  Identical config + seed produce an
// identical table; all randomness flows through one seeded stream.
ResultTable runExperiment(const nlohmann::json& config);

// format "csv": UTF-8 header line plus one line per row, '.' decimal
// separator, %.17g floats, LF endings.  format "json": object with
// "metadata", "columns", "rows" (see schemas/result.schema.json).
void emitTable(const ResultTable& table, const std::string& path,
               const std::string& format);

// Parse-back of the CSV writer's output; numeric cells round-trip bitwise.
ResultTable readCsv(const std::string& path);

}  // namespace qchaos::experiments
