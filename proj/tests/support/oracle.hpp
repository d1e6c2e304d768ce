#pragma once

// Test-only reference kinematics. Builds every frame directly from the DH
// table as a product of explicit 4x4 matrices, without going through the
// library's element plans or its rotation helpers.

#include <array>
#include <cmath>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "manipsim/chain_model.hpp"

namespace oracle {

using M4 = Eigen::Matrix4d;

inline M4 rx(double a) {
  M4 m = M4::Identity();
  m(1, 1) = std::cos(a); m(1, 2) = -std::sin(a);
  m(2, 1) = std::sin(a); m(2, 2) = std::cos(a);
  return m;
}
inline M4 ry(double a) {
  M4 m = M4::Identity();
  m(0, 0) = std::cos(a); m(0, 2) = std::sin(a);
  m(2, 0) = -std::sin(a); m(2, 2) = std::cos(a);
  return m;
}
inline M4 rz(double a) {
  M4 m = M4::Identity();
  m(0, 0) = std::cos(a); m(0, 1) = -std::sin(a);
  m(1, 0) = std::sin(a); m(1, 1) = std::cos(a);
  return m;
}
inline M4 tr(double x, double y, double z) {
  M4 m = M4::Identity();
  m(0, 3) = x; m(1, 3) = y; m(2, 3) = z;
  return m;
}
// Printed values of the world/DH axis changes.
inline M4 w2dh() {
  M4 m;
  m << 0, -1, 0, 0, 0, 0, -1, 0, 1, 0, 0, 0, 0, 0, 0, 1;
  return m;
}
inline M4 dh2w() {
  M4 m;
  m << 0, 0, 1, 0, -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1;
  return m;
}

struct Geometry {
  double mid = 0.5, end = 0.9, w = 0.05;
};

/// Every named frame of the chain. `q[i]` is the joint value of link i+1,
/// `base` = tx, ty, tz, rx, ry, rz with the gimbal applied X, then Y, then Z.
inline std::map<std::string, M4> frames(const manipsim::DHTable& t, const std::array<double, 6>& q,
                                        const std::array<double, 6>& base, Geometry g = {}) {
  using manipsim::LinkType;
  std::map<std::string, M4> out;
  M4 T = tr(base[0], base[1], base[2]) * rx(base[3]) * ry(base[4]) * rz(base[5]);
  out["base_imu"] = T;
  for (int i = 1; i <= 6; ++i) {
    const auto& r = t.link(i);
    if (r.link_type == LinkType::Empty) continue;
    const double qi = q[static_cast<std::size_t>(i - 1)];
    M4 J = r.link_type == LinkType::Revolute ? M4(w2dh() * rx(r.alpha) * tr(0, 0, r.d) * rz(qi))
                                             : M4(w2dh() * rx(r.alpha) * rz(r.theta) * tr(0, 0, qi));
    const std::string pre = "link" + std::to_string(i) + "_imu_";
    out[pre + "mid"] = T * J * tr(g.mid * r.a, g.w, 0);
    out[pre + "end"] = T * J * tr(g.end * r.a, -g.w, 0);
    T = T * J * tr(r.a, 0, 0) * dh2w();
  }
  T = T * tr(0, 0, t.tool().a) * w2dh();
  out["tool_imu"] = T;
  out["tooltip"] = T;
  return out;
}

}  // namespace oracle
