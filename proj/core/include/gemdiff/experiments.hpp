#pragma once

// Experiment orchestration: named verification suites over the simulation
// library, reproducible given (config, seed) for any thread count, emitting
// CSV rows and a JSON summary.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gemdiff {

/// One verified quantity. runtime_s is fixed to 0 in serialized artifacts so
/// outputs stay byte-identical across re-runs; wall time is reported on the
/// console instead.
struct ReportRow {
  std::string experiment;
  std::string quantity;
  std::optional<double> analytic;
  double estimate = 0.0;
  double stderr_value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double runtime_s = 0.0;
};

struct ExperimentConfig {
  std::string experiment;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
  int threads = 0;  // <= 0: GEMDIFF_THREADS, then hardware

  bool has(const std::string& key) const { return params.count(key) != 0; }
  double param_double(const std::string& key, double fallback) const;
  std::size_t param_size(const std::string& key, std::size_t fallback) const;
  std::vector<double> param_grid(const std::string& key,
                                 const std::vector<double>& fallback) const;
};

struct RunResult {
  std::vector<ReportRow> rows;
  bool all_pass = false;
  double wall_seconds = 0.0;
};

struct ExperimentInfo {
  std::string name;
  std::string description;
  std::vector<std::string> keys;  // "key (default)" strings for --help output
};

/// All experiments, in a fixed order.
const std::vector<ExperimentInfo>& experiment_registry();

/// Parse `key = value` configuration text (# comments, optional [run] /
/// [params] section headers). Throws ConfigError with a line diagnostic.
ExperimentConfig parse_config(const std::string& text);

/// Validate a programmatic config exactly as parse_config would.
void validate_config(const ExperimentConfig& cfg);

/// Execute the named experiment. Deterministic given (config, seed),
/// including under parallel execution.
RunResult run(const ExperimentConfig& cfg);

/// Fixed-schema CSV: experiment,quantity,analytic,estimate,stderr,tolerance,pass,runtime_s
std::string to_csv(const std::vector<ReportRow>& rows);

/// Deterministic JSON summary of the run.
std::string to_json(const ExperimentConfig& cfg, const RunResult& result);

/// Write <experiment>.csv and <experiment>.json under cfg.output_dir.
void write_outputs(const ExperimentConfig& cfg, const RunResult& result);

}  // namespace gemdiff
