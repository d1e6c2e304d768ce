#pragma once

#include <array>
#include <vector>

#include "manipsim/chain_model.hpp"

namespace manipsim {

/// Parameters of q(t) = amplitude * sin(frequency * t + phase) + bias.
/// Frequency is in rad/s and phase is an additive angle in rad.
struct SineParams {
  double amplitude = 0.0;
  double bias = 0.0;
  double frequency = 0.0;
  double phase = 0.0;

  bool operator==(const SineParams&) const = default;
};

/// A scalar motion value with its first two time derivatives.
struct MotionSample {
  double q = 0.0;
  double qd = 0.0;
  double qdd = 0.0;

  bool operator==(const MotionSample&) const = default;
};

MotionSample eval_sine(const SineParams& p, double t);

struct JointOscRow {
  double amplitude = 0.0;
  double prismatic_amplitude = 0.0;
  double bias = 0.0;
  double frequency = 0.0;
  double phase = 0.0;

  bool operator==(const JointOscRow&) const = default;
};

/// 8x5 joint oscillation table. Rows 1-6 drive the links; rows 7-8 are carried
/// along unused.
struct JointOscTable {
  std::array<JointOscRow, 8> rows{};

  Matrix to_matrix() const;
  bool operator==(const JointOscTable&) const = default;
};

/// Base oscillation table. The published layout is 2x4 (translation row,
/// rotation row) and drives all three axes of each group identically; a 6x4
/// table gives each of tx, ty, tz, rx, ry, rz its own row.
struct BaseOscTable {
  std::vector<SineParams> rows = std::vector<SineParams>(2);

  const SineParams& axis(int i) const;  // 0..5 = tx, ty, tz, rx, ry, rz
  Matrix to_matrix() const;
  bool operator==(const BaseOscTable&) const = default;
};

JointOscTable parse_joint_table(const Matrix& raw);
BaseOscTable parse_base_table(const Matrix& raw);

MotionSample joint_motion(const JointOscTable& tbl, int link_index, LinkType kind, double t);
std::array<MotionSample, 6> base_motion(const BaseOscTable& tbl, double t);

}  // namespace manipsim
