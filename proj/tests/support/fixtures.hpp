#pragma once

#include <numbers>

#include "manipsim/chain_model.hpp"
#include "manipsim/trajectory.hpp"

namespace fixtures {

inline constexpr double pi = std::numbers::pi;

/// Example six-joint manipulator (two prismatic, four revolute).
inline manipsim::Matrix table3() {
  manipsim::Matrix m(8, 5);
  m << pi / 2, 0.89, 0, 0.14, 2,
       pi / 2, 0.83, pi / 2, 0.29, 1,
       pi / 2, 0.88, 0, 0.22, 1,
       pi / 2, 0.85, pi / 2, 0.24, 1,
       0, 0.86, pi / 2, 0.13, 2,
       0, 0.89, 0, 0.23, 1,
       pi / 2, 0.89, pi / 2, 0.12, 1,
       -pi / 2, 0.86, 0, 0.29, 1;
  return m;
}

/// Second example: link 2 empty, three prismatic and two revolute joints.
inline manipsim::Matrix table4() {
  manipsim::Matrix m(8, 5);
  m << 0, 0.84, 0, 0.17, 2,
       0, 0.82, pi / 2, 0.26, 0,
       pi / 2, 0.82, pi / 2, 0.21, 2,
       0, 0.85, -pi / 2, 0.23, 2,
       pi / 2, 0.83, -pi / 2, 0.26, 1,
       0, 0.87, 0, 0.12, 1,
       pi / 2, 0.88, pi / 2, 0.27, 1,
       -pi / 2, 0.85, pi / 2, 0.20, 1;
  return m;
}

inline manipsim::Matrix joint_table() {
  manipsim::Matrix m(8, 5);
  m << 0.6, 0.10, 0.0, 1.3, 0.2,
       0.4, 0.15, 0.1, 0.7, 1.0,
       0.9, 0.05, -0.2, 1.9, 2.5,
       0.3, 0.20, 0.0, 0.4, 4.0,
       1.1, 0.12, 0.0, 1.1, 0.0,
       0.5, 0.08, 0.3, 1.6, 3.3,
       0.0, 0.00, 0.0, 0.0, 0.0,
       0.0, 0.00, 0.0, 0.0, 0.0;
  return m;
}

inline manipsim::Matrix base_table() {
  manipsim::Matrix m(2, 4);
  m << 0.1, 0.0, 0.8, 0.3,
       0.2, 0.0, 0.5, 1.2;
  return m;
}

}  // namespace fixtures
