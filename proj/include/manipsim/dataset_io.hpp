#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "manipsim/chain_model.hpp"
#include "manipsim/randomizer.hpp"
#include "manipsim/sensors.hpp"
#include "manipsim/trajectory.hpp"

namespace manipsim {

inline constexpr int kFormatVersion = 1;
/// time + 6 joints + base IMU + tool IMU + 6 links x 2 IMUs x 6 channels.
inline constexpr std::size_t kColumns = 1 + 6 + 6 + 6 + 6 * 12;
static_assert(kColumns == 91);

using Row = std::array<double, kColumns>;

/// Column names in output order; the first is "time".
const std::vector<std::string>& column_names();

/// First column of the IMU block that belongs to a sensor slot
/// (0 base, 1 tool, 2i / 2i+1 link i mid / end).
std::size_t slot_column(int slot);

struct DatasetRecord {
  double time = 0.0;
  std::array<double, 6> joint_values{};
  ImuSample base_imu;
  ImuSample tool_imu;
  std::array<std::array<ImuSample, 2>, 6> link_imus{};  // [link-1][mid, end]

  Row to_row() const;
};

/// `imu` must hold one sample per place_sensors(plan) entry, in that order.
/// Joint values and IMU blocks of empty links are zero.
DatasetRecord assemble_record(double t, const std::array<MotionSample, 6>& joints,
                              const std::vector<ImuSample>& imu, const ChainPlan& plan);

enum class DataFormat { Csv, Binary };

struct RunManifest {
  int format_version = kFormatVersion;
  std::string prng = "";
  RunTables tables;
  std::uint64_t seed = 0;
  RunMode mode;
  double sample_rate = 200.0;  // Hz
  double duration = 10.0;      // s
  bool noise = true;
  ImuConfig imu;
  ChainOptions chain;
  DataFormat data_format = DataFormat::Csv;
  RandomRanges ranges;  // draw ranges in effect (informational in MODE 2)
  std::string dataset_file;  // file name of the data, relative to the manifest

  std::size_t row_count() const;
  double time_at(std::size_t k) const { return static_cast<double>(k) / sample_rate; }
};

/// Sidecar manifest path for a dataset path: "run.csv" -> "run.manifest.json".
std::filesystem::path manifest_path_for(const std::filesystem::path& dataset);

std::string manifest_to_string(const RunManifest& m);
RunManifest manifest_from_string(const std::string& text);

void write_manifest(const RunManifest& m, const std::filesystem::path& path);
RunManifest load_manifest(const std::filesystem::path& path);

/// Writes the dataset and its sidecar manifest. Both files appear atomically
/// (written to a temporary name and renamed).
void write_dataset(const std::vector<Row>& rows, RunManifest manifest,
                   const std::filesystem::path& path);

std::vector<Row> read_dataset(const std::filesystem::path& path);

/// Plain numeric matrix in comma-separated form, one row per line.
Matrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const Matrix& m, const std::filesystem::path& path);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

/// Writes `content` to `path` through a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace manipsim
