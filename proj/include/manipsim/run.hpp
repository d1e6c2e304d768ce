#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "manipsim/dataset_io.hpp"
#include "manipsim/kinematics.hpp"
#include "manipsim/randomizer.hpp"

namespace manipsim {

struct RunConfig {
  RunMode mode;
  std::uint64_t seed = 0;
  double duration = 10.0;     // s
  double sample_rate = 200.0;  // Hz
  RandomRanges ranges;
  ImuConfig imu;
  ChainOptions chain;
  bool noise = true;
  DataFormat data_format = DataFormat::Csv;
  // MODE 2 inputs: CSV matrices, or manifests to take the matching table from.
  std::optional<std::filesystem::path> dh_path, joints_path, base_path;
  std::filesystem::path out = "dataset.csv";
  int batch_count = 1;

  /// Throws ConfigError when duration, rate or batch count are out of range.
  void validate() const;
};

/// Overlays keys of a JSON run-configuration document onto `cfg`.
void apply_config_text(RunConfig& cfg, const std::string& json_text);
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Reads one input table. A `.json` path is taken as a manifest and the
/// table named `key` (senSenDH, senSenJ or senSenB) is extracted from it.
Matrix load_table(const std::filesystem::path& path, const std::string& key);

RunManifest make_manifest(const RunConfig& cfg, const RunTables& tables, std::uint64_t seed);

/// Runs the fixed-step simulation loop described by a manifest.
std::vector<Row> simulate(const RunManifest& manifest);

struct RunResult {
  RunManifest manifest;
  std::filesystem::path dataset;
  std::vector<std::string> warnings;
};

RunResult run_once(const RunConfig& cfg);

struct BatchResult {
  std::vector<RunResult> runs;
  std::filesystem::path summary;
};

/// Writes run_NNNN files plus batch_summary.json into cfg.out (a directory).
/// On failure the completed runs are kept, the summary records them and the
/// rethrown error names the failing index.
BatchResult run_batch(const RunConfig& cfg);

/// Human-readable summary of a manifest or a dataset with its sidecar.
std::string inspect(const std::filesystem::path& path);

/// JSON listing of every recorded frame at rest (zero joint and base values)
/// together with the element that precedes it.
std::string dump_scene(const RunTables& tables, const ChainOptions& options);

struct ValidationReport {
  double max_omega = 0.0, max_v = 0.0, max_alpha = 0.0, max_a = 0.0;
  std::size_t frames_checked = 0;
  bool passed(double vel_tol = 1e-5, double acc_tol = 1e-3) const {
    return max_omega <= vel_tol && max_v <= vel_tol && max_alpha <= acc_tol && max_a <= acc_tol;
  }
};

/// Compares evaluate_chain against the finite-difference oracle at `times`.
ValidationReport validate_kinematics(const RunTables& tables, const ChainOptions& options,
                                     const std::vector<double>& times,
                                     double h = kDefaultFdStep);

}  // namespace manipsim
