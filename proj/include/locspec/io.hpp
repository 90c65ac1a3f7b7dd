#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "locspec/family.hpp"
#include "locspec/functional.hpp"
#include "locspec/kernel.hpp"
#include "locspec/mc.hpp"
#include "locspec/model.hpp"
#include "locspec/optimize.hpp"

namespace locspec {

inline constexpr const char* kVersion = "locspec 0.1.0";

// Malformed or inconsistent configuration; the CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json load_json(const std::string& path);

CoefficientCurve parse_curve(const nlohmann::json& j);
TvArmaModel parse_model(const nlohmann::json& j);
Taper parse_taper(const nlohmann::json& j);
FrequencyPart parse_frequency_part(const nlohmann::json& j);
SpectralFunctional parse_functional(const nlohmann::json& j);
ParametricSpectralFamily parse_family(const nlohmann::json& j);
SmoothingKernel parse_kernel(const nlohmann::json& j);
OptimizerConfig parse_optimizer(const nlohmann::json& j);

// 17 significant digits, '.' decimal; round-trips doubles exactly.
std::string format_double(double v);

// Comma-separated, headers always, LF line endings.
void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

void write_text(const std::string& path, const std::string& content);

nlohmann::json report_to_json(const McReport& report);

// One CSV per report table, named <stem>_<table>.csv under dir. Returns the
// paths written.
std::vector<std::string> write_report_tables(const std::string& dir,
                                             const std::string& stem,
                                             const McReport& report);

// Everything needed to reproduce a run byte-for-byte.
struct RunManifest {
  std::string command;
  std::string config_path;
  nlohmann::json config;  // resolved echo, overrides applied
  std::vector<std::string> outputs;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  double wall_seconds = 0.0;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
};

void write_manifest(const std::string& path, const RunManifest& manifest);
RunManifest load_manifest(const std::string& path);

}  // namespace locspec
