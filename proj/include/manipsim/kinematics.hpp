#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "manipsim/chain_model.hpp"
#include "manipsim/trajectory.hpp"

namespace manipsim {

/// Pose and motion of a frame. Every vector is resolved in the world frame;
/// R holds the frame axes as columns.
struct FrameState {
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  Eigen::Vector3d omega = Eigen::Vector3d::Zero();
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  Eigen::Vector3d alpha = Eigen::Vector3d::Zero();
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
};

struct Pose {
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  Eigen::Vector3d p = Eigen::Vector3d::Zero();

  Eigen::Matrix4d matrix() const;
};

/// Values recorded at the plan's frames, in ChainPlan::frames() order.
template <typename T>
struct NamedFrames {
  std::vector<std::string> names;
  std::vector<T> values;

  const T& at(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return values[i];
    throw std::out_of_range("no frame named " + name);
  }
  std::size_t size() const { return values.size(); }
};

/// Rigidly attached child frame at offset pc (in the parent frame) with
/// relative orientation Rc.
FrameState propagate_const(const FrameState& s, const Eigen::Matrix3d& Rc,
                           const Eigen::Vector3d& pc);

/// Joint rotating about the frame's local `axis` (default z).
FrameState propagate_revolute(const FrameState& s, const MotionSample& m, int axis = 2);

/// Joint sliding along the frame's local `axis` (default z).
FrameState propagate_prismatic(const FrameState& s, const MotionSample& m, int axis = 2);

/// Joint and base motion at one instant. joints[i] drives link i+1; base holds
/// tx, ty, tz, rx, ry, rz.
struct ChainMotion {
  std::array<MotionSample, 6> joints{};
  std::array<MotionSample, 6> base{};
};

ChainMotion sample_motion(const ChainPlan& plan, const JointOscTable& jt, const BaseOscTable& bt,
                          double t);

NamedFrames<FrameState> evaluate_chain(const ChainPlan& plan, const ChainMotion& motion);
NamedFrames<FrameState> evaluate_chain(const ChainPlan& plan, const JointOscTable& jt,
                                       const BaseOscTable& bt, double t);

/// Pose-only forward kinematics by homogeneous-matrix composition.
/// `joints` maps link index to joint value and must cover every joint slot;
/// throws MissingJointValue otherwise.
NamedFrames<Pose> fk_pose(const ChainPlan& plan, const std::map<int, double>& joints,
                          const std::array<double, 6>& base = {});

struct FrameDerivatives {
  Eigen::Vector3d omega = Eigen::Vector3d::Zero();
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  Eigen::Vector3d alpha = Eigen::Vector3d::Zero();
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
};

inline constexpr double kDefaultFdStep = 1e-4;

/// Central-difference estimates of frame rates from fk_pose sampled around t.
NamedFrames<FrameDerivatives> finite_difference_oracle(const ChainPlan& plan,
                                                       const JointOscTable& jt,
                                                       const BaseOscTable& bt, double t,
                                                       double h = kDefaultFdStep);

}  // namespace manipsim
