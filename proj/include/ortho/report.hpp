#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ortho {

inline constexpr const char* kArtifactVersion = "0.1.0";

// One scenario as supplied by flags or a config file. Empty strings mean
// "not provided": suites fall back to their built-in batteries, codomain
// falls back to domain.
struct ScenarioConfig {
  std::string suite;
  std::string domain;
  std::string codomain;
  std::string matrix;    // row-major text, e.g. "1,2;0,1"
  std::string relation = "birkhoff";
  std::uint64_t seed = 42;
  int sample_count = 10000;
  double tolerance = 1e-8;
};

// defaults <- ORTHO_SEED env <- json config text <- explicit CLI overrides;
// validates sample_count >= 1 and tolerance > 0
ScenarioConfig config_defaults();
ScenarioConfig config_from_json(const std::string& text, ScenarioConfig base);
void validate_config(const ScenarioConfig& cfg);

enum class CheckStatus { Pass, Fail, Skip };

struct CheckRecord {
  std::string name;
  CheckStatus status = CheckStatus::Fail;
  std::optional<double> measured;
  std::optional<double> bound;
  std::string witness;
};

struct ReportDocument {
  std::string suite;
  std::string anchor;  // one-line statement of the claim the suite exercises
  std::string version = kArtifactVersion;
  ScenarioConfig config;
  std::vector<CheckRecord> checks;
  double elapsed_ms = 0.0;

  int failed_count() const;
  bool all_pass() const { return failed_count() == 0; }
};

// canonical JSON: stable key order, doubles at 12 significant digits;
// elapsed_ms is the only field that varies between identical runs
std::string to_json(const ReportDocument& doc);
// one header line plus one row per check
std::string to_csv(const ReportDocument& doc);
// writes in the chosen format ("json" or "csv"); io_error on failure
void emit_report(const ReportDocument& doc, const std::string& format,
                 const std::string& path);

}  // namespace ortho
