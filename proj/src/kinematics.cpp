#include "manipsim/kinematics.hpp"

#include <stdexcept>

#include "manipsim/errors.hpp"

namespace manipsim {

Eigen::Matrix4d Pose::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = R;
  m.topRightCorner<3, 1>() = p;
  return m;
}

FrameState propagate_const(const FrameState& s, const Eigen::Matrix3d& Rc,
                           const Eigen::Vector3d& pc) {
  FrameState out = s;
  const Eigen::Vector3d r = s.R * pc;
  out.R = s.R * Rc;
  out.p = s.p + r;
  out.v = s.v + s.omega.cross(r);
  out.a = s.a + s.alpha.cross(r) + s.omega.cross(s.omega.cross(r));
  return out;
}

FrameState propagate_revolute(const FrameState& s, const MotionSample& m, int axis) {
  FrameState out = s;
  const Eigen::Vector3d u = s.R.col(axis);
  out.R = s.R * axis_rotation(axis, m.q);
  out.omega = s.omega + m.qd * u;
  out.alpha = s.alpha + m.qdd * u + s.omega.cross(m.qd * u);
  return out;
}

FrameState propagate_prismatic(const FrameState& s, const MotionSample& m, int axis) {
  FrameState out = s;
  const Eigen::Vector3d u = s.R.col(axis);
  const Eigen::Vector3d r = m.q * u;
  const Eigen::Vector3d vrel = m.qd * u;
  out.p = s.p + r;
  out.v = s.v + vrel + s.omega.cross(r);
  out.a = s.a + m.qdd * u + 2.0 * s.omega.cross(vrel) + s.alpha.cross(r) +
          s.omega.cross(s.omega.cross(r));
  return out;
}

ChainMotion sample_motion(const ChainPlan& plan, const JointOscTable& jt, const BaseOscTable& bt,
                          double t) {
  ChainMotion m;
  for (const auto& slot : plan.joint_slots)
    m.joints[static_cast<std::size_t>(slot.link - 1)] = joint_motion(jt, slot.link, slot.type, t);
  m.base = base_motion(bt, t);
  return m;
}

namespace {

// Walks the element list once, calling `snap(frame_index, state)` at every
// recorded frame. `step(state, element)` advances the state.
template <typename State, typename Step, typename Snap>
void walk(const ChainPlan& plan, State state, Step step, Snap snap) {
  const auto frames = plan.frames();
  auto snap_at = [&](std::size_t pos, const State& s) {
    for (std::size_t f = 0; f < frames.size(); ++f)
      if (frames[f]->position == pos) snap(f, s);
  };
  for (std::size_t i = 0; i < plan.elements.size(); ++i) {
    snap_at(i, state);
    state = step(state, plan.elements[i]);
  }
  snap_at(plan.elements.size(), state);
}

std::vector<std::string> frame_names(const ChainPlan& plan) {
  std::vector<std::string> names;
  for (const auto* f : plan.frames()) names.push_back(f->name);
  return names;
}

}  // namespace

NamedFrames<FrameState> evaluate_chain(const ChainPlan& plan, const ChainMotion& motion) {
  const auto frames = plan.frames();
  NamedFrames<FrameState> out{frame_names(plan), std::vector<FrameState>(frames.size())};

  auto step = [&](const FrameState& s, const ElementaryTransform& e) -> FrameState {
    switch (e.kind) {
      case ElementKind::BaseCartesian: {
        FrameState x = s;
        for (int ax = 0; ax < 3; ++ax)
          x = propagate_prismatic(x, motion.base[static_cast<std::size_t>(ax)], ax);
        return x;
      }
      case ElementKind::BaseGimbal: {
        FrameState x = s;
        for (int ax : plan.gimbal_order)
          x = propagate_revolute(x, motion.base[static_cast<std::size_t>(3 + ax)], ax);
        return x;
      }
      case ElementKind::JointRotZ:
        return propagate_revolute(s, motion.joints[static_cast<std::size_t>(e.link - 1)]);
      case ElementKind::JointTransZ:
        return propagate_prismatic(s, motion.joints[static_cast<std::size_t>(e.link - 1)]);
      default: {
        const Eigen::Matrix4d m = e.matrix();
        return propagate_const(s, m.topLeftCorner<3, 3>(), m.topRightCorner<3, 1>());
      }
    }
  };
  walk(plan, FrameState{}, step, [&](std::size_t f, const FrameState& s) {
    out.values[f] = propagate_const(s, Eigen::Matrix3d::Identity(), frames[f]->offset);
  });
  return out;
}

NamedFrames<FrameState> evaluate_chain(const ChainPlan& plan, const JointOscTable& jt,
                                       const BaseOscTable& bt, double t) {
  return evaluate_chain(plan, sample_motion(plan, jt, bt, t));
}

NamedFrames<Pose> fk_pose(const ChainPlan& plan, const std::map<int, double>& joints,
                          const std::array<double, 6>& base) {
  for (const auto& slot : plan.joint_slots)
    if (!joints.contains(slot.link))
      throw MissingJointValue("no joint value for link " + std::to_string(slot.link));

  const auto frames = plan.frames();
  NamedFrames<Pose> out{frame_names(plan), std::vector<Pose>(frames.size())};

  auto step = [&](const Eigen::Matrix4d& T, const ElementaryTransform& e) -> Eigen::Matrix4d {
    switch (e.kind) {
      case ElementKind::BaseCartesian: {
        Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
        m.topRightCorner<3, 1>() << base[0], base[1], base[2];
        return T * m;
      }
      case ElementKind::BaseGimbal: {
        Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
        Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
        for (int ax : plan.gimbal_order) r = r * axis_rotation(ax, base[static_cast<std::size_t>(3 + ax)]);
        m.topLeftCorner<3, 3>() = r;
        return T * m;
      }
      case ElementKind::JointRotZ:
      case ElementKind::JointTransZ:
        return T * e.matrix(joints.at(e.link));
      default:
        return T * e.matrix();
    }
  };
  walk(plan, Eigen::Matrix4d(Eigen::Matrix4d::Identity()), step,
       [&](std::size_t f, const Eigen::Matrix4d& T) {
         Eigen::Matrix4d off = Eigen::Matrix4d::Identity();
         off.topRightCorner<3, 1>() = frames[f]->offset;
         const Eigen::Matrix4d M = T * off;
         out.values[f] = {M.topLeftCorner<3, 3>(), M.topRightCorner<3, 1>()};
       });
  return out;
}

namespace {

Eigen::Vector3d vee(const Eigen::Matrix3d& m) {
  const Eigen::Matrix3d s = 0.5 * (m - m.transpose());
  return {s(2, 1), s(0, 2), s(1, 0)};
}

NamedFrames<Pose> poses_at(const ChainPlan& plan, const JointOscTable& jt, const BaseOscTable& bt,
                           double t) {
  std::map<int, double> joints;
  for (const auto& slot : plan.joint_slots)
    joints[slot.link] = joint_motion(jt, slot.link, slot.type, t).q;
  std::array<double, 6> base{};
  const auto bm = base_motion(bt, t);
  for (std::size_t i = 0; i < 6; ++i) base[i] = bm[i].q;
  return fk_pose(plan, joints, base);
}

}  // namespace

NamedFrames<FrameDerivatives> finite_difference_oracle(const ChainPlan& plan,
                                                       const JointOscTable& jt,
                                                       const BaseOscTable& bt, double t,
                                                       double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  // Samples at t-2h .. t+2h; omega at t-h and t+h feeds the alpha estimate.
  std::array<NamedFrames<Pose>, 5> P;
  for (int k = 0; k < 5; ++k) P[static_cast<std::size_t>(k)] = poses_at(plan, jt, bt, t + (k - 2) * h);

  NamedFrames<FrameDerivatives> out{P[2].names, std::vector<FrameDerivatives>(P[2].size())};
  for (std::size_t f = 0; f < P[2].size(); ++f) {
    auto omega_at = [&](int c) {
      const auto& lo = P[static_cast<std::size_t>(c - 1)].values[f];
      const auto& mid = P[static_cast<std::size_t>(c)].values[f];
      const auto& hi = P[static_cast<std::size_t>(c + 1)].values[f];
      const Eigen::Matrix3d Rdot = (hi.R - lo.R) / (2.0 * h);
      return vee(Rdot * mid.R.transpose());
    };
    const auto& p0 = P[1].values[f].p;
    const auto& p1 = P[2].values[f].p;
    const auto& p2 = P[3].values[f].p;
    auto& d = out.values[f];
    d.v = (p2 - p0) / (2.0 * h);
    d.a = (p2 - 2.0 * p1 + p0) / (h * h);
    d.omega = omega_at(2);
    d.alpha = (omega_at(3) - omega_at(1)) / (2.0 * h);
  }
  return out;
}

}  // namespace manipsim
