#include "manipsim/trajectory.hpp"

#include <cmath>
#include <sstream>

#include "manipsim/errors.hpp"

namespace manipsim {

MotionSample eval_sine(const SineParams& p, double t) {
  const double arg = p.frequency * t + p.phase;
  const double s = std::sin(arg);
  const double c = std::cos(arg);
  return {p.amplitude * s + p.bias, p.amplitude * p.frequency * c,
          -p.amplitude * p.frequency * p.frequency * s};
}

namespace {

void require_finite(const Matrix& raw, const char* what) {
  for (Eigen::Index i = 0; i < raw.rows(); ++i)
    for (Eigen::Index j = 0; j < raw.cols(); ++j)
      if (!std::isfinite(raw(i, j))) {
        std::ostringstream os;
        os << what << " entry (" << i + 1 << "," << j + 1 << ") is not finite";
        throw NonFiniteValue(os.str());
      }
}

void require_nonnegative_frequency(double f, const char* what, Eigen::Index row) {
  if (f < 0.0) {
    std::ostringstream os;
    os << what << " row " << row + 1 << ": frequency must be >= 0";
    throw InvalidRange(os.str());
  }
}

}  // namespace

Matrix JointOscTable::to_matrix() const {
  Matrix m(8, 5);
  for (int i = 0; i < 8; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    m.row(i) << r.amplitude, r.prismatic_amplitude, r.bias, r.frequency, r.phase;
  }
  return m;
}

const SineParams& BaseOscTable::axis(int i) const {
  if (rows.size() == 2) return rows[static_cast<std::size_t>(i / 3)];
  return rows.at(static_cast<std::size_t>(i));
}

Matrix BaseOscTable::to_matrix() const {
  Matrix m(static_cast<Eigen::Index>(rows.size()), 4);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    m.row(i) << r.amplitude, r.bias, r.frequency, r.phase;
  }
  return m;
}

JointOscTable parse_joint_table(const Matrix& raw) {
  if (raw.rows() != 8 || raw.cols() != 5) {
    std::ostringstream os;
    os << "joint oscillation table must be 8x5, got " << raw.rows() << "x" << raw.cols();
    throw DimensionError(os.str());
  }
  require_finite(raw, "joint oscillation table");
  JointOscTable t;
  for (int i = 0; i < 8; ++i) {
    // Rows 7-8 are unused and accepted as-is.
    if (i < kNumLinks) require_nonnegative_frequency(raw(i, 3), "joint oscillation table", i);
    t.rows[static_cast<std::size_t>(i)] = {raw(i, 0), raw(i, 1), raw(i, 2), raw(i, 3), raw(i, 4)};
  }
  return t;
}

BaseOscTable parse_base_table(const Matrix& raw) {
  if ((raw.rows() != 2 && raw.rows() != 6) || raw.cols() != 4) {
    std::ostringstream os;
    os << "base oscillation table must be 2x4 (or 6x4), got " << raw.rows() << "x" << raw.cols();
    throw DimensionError(os.str());
  }
  require_finite(raw, "base oscillation table");
  BaseOscTable t;
  t.rows.resize(static_cast<std::size_t>(raw.rows()));
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    require_nonnegative_frequency(raw(i, 2), "base oscillation table", i);
    t.rows[static_cast<std::size_t>(i)] = {raw(i, 0), raw(i, 1), raw(i, 2), raw(i, 3)};
  }
  return t;
}

MotionSample joint_motion(const JointOscTable& tbl, int link_index, LinkType kind, double t) {
  if (link_index < 1 || link_index > kNumLinks)
    throw IndexError("joint index " + std::to_string(link_index) + " outside 1..6");
  const auto& r = tbl.rows[static_cast<std::size_t>(link_index - 1)];
  switch (kind) {
    case LinkType::Empty: return {};
    case LinkType::Revolute: return eval_sine({r.amplitude, r.bias, r.frequency, r.phase}, t);
    case LinkType::Prismatic:
      return eval_sine({r.prismatic_amplitude, r.bias, r.frequency, r.phase}, t);
  }
  return {};
}

std::array<MotionSample, 6> base_motion(const BaseOscTable& tbl, double t) {
  std::array<MotionSample, 6> out;
  for (int i = 0; i < 6; ++i) out[static_cast<std::size_t>(i)] = eval_sine(tbl.axis(i), t);
  return out;
}

}  // namespace manipsim
