#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "manipsim/chain_model.hpp"
#include "manipsim/kinematics.hpp"

namespace manipsim {

enum class Resolution { Body, World };

struct ImuConfig {
  Resolution resolve_in = Resolution::Body;
  bool include_gravity = false;
  Eigen::Vector3d gravity{0.0, 0.0, -9.80665};
  // Shipped placeholders, to be calibrated against the reference IMU datasheet.
  double sigma_gyro = 2e-3;
  double sigma_accel = 2e-2;
  std::uint64_t rng_seed = 0;
};

/// Channel order: wx, wy, wz, ax, ay, az.
struct ImuSample {
  std::array<double, 6> values{};

  Eigen::Vector3d gyro() const { return {values[0], values[1], values[2]}; }
  Eigen::Vector3d accel() const { return {values[3], values[4], values[5]}; }
  bool operator==(const ImuSample&) const = default;
};

/// Noise-free reading. With include_gravity the accelerometer reports
/// specific force (kinematic acceleration minus gravity).
ImuSample measure(const FrameState& s, const ImuConfig& c);

/// Gaussian noise stream keyed by (seed, sensor id, sample index) so that
/// samples can be generated in any order and still match.
ImuSample add_noise(const ImuSample& m, const ImuConfig& c, std::uint64_t sensor_id,
                    std::uint64_t sample_index);

struct SensorSpec {
  const Attachment* frame;  // points into the plan
  /// Column-block slot: 0 base, 1 tool, 2i mid and 2i+1 end for link i.
  int slot;
};

/// Sensors in dataset column order: base, tool, then link mid/end pairs.
std::vector<SensorSpec> place_sensors(const ChainPlan& plan);

}  // namespace manipsim
