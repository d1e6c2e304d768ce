#include <doctest.h>

#include <numbers>

#include "manipsim/chain_model.hpp"
#include "manipsim/errors.hpp"
#include "manipsim/kinematics.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace manipsim;
using fixtures::pi;

namespace {

Eigen::Matrix4d compose(const std::vector<ElementaryTransform>& els, double q) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  for (const auto& e : els) m = m * e.matrix(q);
  return m;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

DHRow row(double alpha, double a, double theta, double d, LinkType t) { return {alpha, a, theta, d, t}; }

DHTable single_link(const DHRow& r) {
  DHTable t;
  t.link(1) = r;
  return t;
}

}  // namespace

TEST_CASE("parse_dh_table maps columns in order alpha, a, theta, d, type") {
  const auto t = parse_dh_table(fixtures::table3());
  CHECK(t.link(1).alpha == pi / 2);
  CHECK(t.link(1).a == 0.89);
  CHECK(t.link(1).theta == 0.0);
  CHECK(t.link(1).d == 0.14);
  CHECK(t.link(1).link_type == LinkType::Prismatic);
  CHECK(t.tool().a == 0.89);
  CHECK(t.base().alpha == -pi / 2);
  CHECK(t.to_matrix() == fixtures::table3());
}

TEST_CASE("parse_dh_table zero matrix gives all-empty table") {
  const auto t = parse_dh_table(Matrix::Zero(8, 5));
  for (const auto& r : t.rows) CHECK(r == DHRow{});
}

TEST_CASE("parse_dh_table rejects bad input") {
  CHECK_THROWS_AS(parse_dh_table(Matrix::Zero(7, 5)), DimensionError);
  CHECK_THROWS_AS(parse_dh_table(Matrix::Zero(8, 4)), DimensionError);
  Matrix m = Matrix::Zero(8, 5);
  m(3, 4) = 3;
  CHECK_THROWS_AS(parse_dh_table(m), InvalidLinkType);
  m(3, 4) = 1.5;
  CHECK_THROWS_AS(parse_dh_table(m), InvalidLinkType);
  m(3, 4) = 1;
  m(2, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(parse_dh_table(m), NonFiniteValue);
}

TEST_CASE("world/DH axis changes match the printed matrices and invert each other") {
  CHECK(world_to_dh() == oracle::w2dh());
  CHECK(dh_to_world() == oracle::dh2w());
  CHECK(world_to_dh() * dh_to_world() == Eigen::Matrix4d::Identity());
  CHECK(dh_to_world() * world_to_dh() == Eigen::Matrix4d::Identity());
}

TEST_CASE("revolute link plan") {
  SUBCASE("element order") {
    const auto els = plan_revolute_link(row(0.3, 0.5, 1.0, 0.2, LinkType::Revolute), 4);
    REQUIRE(els.size() == 6);
    CHECK(els[0].kind == ElementKind::WorldToDH);
    CHECK(els[1].kind == ElementKind::RotX);
    CHECK(els[1].value == 0.3);
    CHECK(els[2].kind == ElementKind::TransZ);
    CHECK(els[2].value == 0.2);
    CHECK(els[3].kind == ElementKind::JointRotZ);
    CHECK(els[3].link == 4);
    CHECK(els[4].kind == ElementKind::TransX);
    CHECK(els[5].kind == ElementKind::DHToWorld);
    // The fixed theta of a revolute row is never applied.
    for (const auto& e : els) CHECK(e.kind != ElementKind::RotZ);
  }
  SUBCASE("all-zero row collapses to identity") {
    CHECK(max_abs(compose(plan_revolute_link(DHRow{}, 1), 0.0) - Eigen::Matrix4d::Identity()) == 0.0);
  }
  SUBCASE("example row matches brute-force product") {
    const auto r = row(pi / 2, 0.83, pi / 2, 0.29, LinkType::Revolute);
    const oracle::M4 expect = oracle::w2dh() * oracle::rx(pi / 2) * oracle::tr(0, 0, 0.29) *
                              oracle::tr(0.83, 0, 0) * oracle::dh2w();
    CHECK(max_abs(compose(plan_revolute_link(r, 2), 0.0) - expect) < 1e-15);
  }
  SUBCASE("joint at pi/2 swings a unit link about DH z") {
    const auto plan = compile_chain(single_link(row(0, 1, 0, 0, LinkType::Revolute)));
    const auto poses = fk_pose(plan, {{1, pi / 2}});
    const auto expect = oracle::frames(plan.table, {pi / 2, 0, 0, 0, 0, 0}, {});
    CHECK(max_abs(poses.at("tooltip").matrix() - expect.at("tooltip")) < 1e-15);
    // DH x rotated by pi/2 about DH z is DH y = world -x; a = 1, tool length 0.
    CHECK(poses.at("tooltip").p.isApprox(Eigen::Vector3d(-1, 0, 0), 1e-15));
  }
}

TEST_CASE("prismatic link plan") {
  SUBCASE("element order applies theta and not d") {
    const auto els = plan_prismatic_link(row(0.1, 0.4, 0.7, 0.25, LinkType::Prismatic), 3);
    REQUIRE(els.size() == 6);
    CHECK(els[2].kind == ElementKind::RotZ);
    CHECK(els[2].value == 0.7);
    CHECK(els[3].kind == ElementKind::JointTransZ);
    for (const auto& e : els) CHECK(!(e.kind == ElementKind::TransZ && e.value == 0.25));
  }
  SUBCASE("zero row at zero displacement is identity") {
    CHECK(max_abs(compose(plan_prismatic_link(DHRow{}, 1), 0.0) - Eigen::Matrix4d::Identity()) == 0.0);
  }
  SUBCASE("displacement 0.5 moves along DH z") {
    const auto plan = compile_chain(single_link(row(0, 0, 0, 0, LinkType::Prismatic)));
    const auto tip = fk_pose(plan, {{1, 0.5}}).at("tooltip");
    const oracle::M4 expect = oracle::w2dh() * oracle::tr(0, 0, 0.5) * oracle::dh2w() * oracle::w2dh();
    CHECK(max_abs(tip.matrix() - expect) < 1e-15);
    // DH z is world -y.
    CHECK(tip.p.isApprox(Eigen::Vector3d(0, -0.5, 0), 1e-15));
  }
  SUBCASE("example row matches brute-force product") {
    const auto r = row(pi / 2, 0.82, pi / 2, 0.21, LinkType::Prismatic);
    const oracle::M4 expect = oracle::w2dh() * oracle::rx(pi / 2) * oracle::rz(pi / 2) *
                              oracle::tr(0.82, 0, 0) * oracle::dh2w();
    CHECK(max_abs(compose(plan_prismatic_link(r, 3), 0.0) - expect) < 1e-15);
  }
}

TEST_CASE("empty link plan passes through") {
  CHECK(plan_empty_link(2).empty());
  const auto r = row(0.4, 0.9, 0.2, 0.3, LinkType::Revolute);
  DHTable with_empty;
  with_empty.link(1) = row(0, 0.82, pi / 2, 0.26, LinkType::Empty);
  with_empty.link(2) = r;
  const auto a = fk_pose(compile_chain(with_empty), {{2, 0.7}});
  const auto b = fk_pose(compile_chain(single_link(r)), {{1, 0.7}});
  CHECK(max_abs(a.at("tooltip").matrix() - b.at("tooltip").matrix()) == 0.0);
}

TEST_CASE("base plan") {
  const auto els = plan_base();
  REQUIRE(els.size() == 2);
  CHECK(els[0].kind == ElementKind::BaseCartesian);
  CHECK(els[1].kind == ElementKind::BaseGimbal);

  const auto plan = compile_chain(DHTable{});
  CHECK(max_abs(fk_pose(plan, {}).at("base_imu").matrix() - Eigen::Matrix4d::Identity()) == 0.0);
  const auto moved = fk_pose(plan, {}, {1, 2, 3, 0, 0, 0}).at("base_imu");
  CHECK(moved.p == Eigen::Vector3d(1, 2, 3));
  CHECK(moved.R == Eigen::Matrix3d::Identity());
  const auto turned = fk_pose(plan, {}, {0, 0, 0, pi / 2, 0, 0}).at("base_imu");
  CHECK(max_abs(turned.matrix() - oracle::rx(pi / 2)) < 1e-15);
}

TEST_CASE("gimbal order is configurable") {
  ChainOptions opt;
  opt.gimbal_order = *parse_gimbal_order("zyx");
  const auto plan = compile_chain(DHTable{}, opt);
  const auto p = fk_pose(plan, {}, {0, 0, 0, 0.3, 0.5, 0.7}).at("base_imu");
  CHECK(max_abs(p.matrix() - oracle::rz(0.7) * oracle::ry(0.5) * oracle::rx(0.3)) < 1e-15);
  CHECK_FALSE(parse_gimbal_order("xxy"));
  CHECK_FALSE(parse_gimbal_order("xy"));
  CHECK(gimbal_order_name(kGimbalXYZ) == "XYZ");
}

TEST_CASE("tool plan") {
  const auto els = plan_tool(row(0.3, 0.89, 0.5, 0.12, LinkType::Revolute));
  REQUIRE(els.size() == 3);
  CHECK(els[0].value == doctest::Approx(0.445));
  CHECK(els[2].kind == ElementKind::WorldToDH);

  SUBCASE("zero length adds only the axis change") {
    const auto plan = compile_chain(DHTable{});
    CHECK(max_abs(fk_pose(plan, {}).at("tooltip").matrix() - oracle::w2dh()) == 0.0);
  }
  for (double len : {0.89, 0.88}) {
    CAPTURE(len);
    DHTable t;
    t.rows[kToolRow - 1].a = len;
    t.link(1) = row(0.4, 0.7, 0, 0.1, LinkType::Revolute);
    const auto plan = compile_chain(t);
    const auto poses = fk_pose(plan, {{1, 0.3}});
    // Exit frame of link 1, then the tool runs along its z-axis.
    const oracle::M4 exit = oracle::w2dh() * oracle::rx(0.4) * oracle::tr(0, 0, 0.1) * oracle::rz(0.3) *
                            oracle::tr(0.7, 0, 0) * oracle::dh2w();
    const Eigen::Vector3d expect = exit.topRightCorner<3, 1>() + len * exit.block<3, 1>(0, 2);
    CHECK((poses.at("tooltip").p - expect).norm() < 1e-15);
  }
}

TEST_CASE("compile_chain on the example tables") {
  SUBCASE("six joints") {
    const auto plan = compile_chain(parse_dh_table(fixtures::table3()));
    REQUIRE(plan.joint_slots.size() == 6);
    const LinkType expect[] = {LinkType::Prismatic, LinkType::Revolute, LinkType::Revolute,
                               LinkType::Revolute, LinkType::Prismatic, LinkType::Revolute};
    for (int i = 0; i < 6; ++i) CHECK(plan.joint_slots[static_cast<std::size_t>(i)].type == expect[i]);
    CHECK(plan.sensors.size() == 14);
  }
  SUBCASE("empty second link") {
    const auto plan = compile_chain(parse_dh_table(fixtures::table4()));
    CHECK(plan.joint_slots.size() == 5);
    CHECK(plan.link_type(2) == LinkType::Empty);
    CHECK(plan.sensors.size() == 12);
    CHECK(plan.find("link2_imu_mid") == nullptr);
  }
  SUBCASE("all empty") {
    const auto plan = compile_chain(DHTable{});
    CHECK(plan.joint_slots.empty());
    REQUIRE(plan.sensors.size() == 2);
    CHECK(plan.sensors[0].name == "base_imu");
    CHECK(plan.sensors[1].name == "tool_imu");
    // Only base and tool elements remain.
    REQUIRE(plan.elements.size() == 5);
    CHECK(plan.elements[0].kind == ElementKind::BaseCartesian);
    CHECK(plan.elements[4].kind == ElementKind::WorldToDH);
  }
}

TEST_CASE("every element is a rigid transform") {
  const auto plan = compile_chain(parse_dh_table(fixtures::table3()));
  for (const auto& e : plan.elements) {
    const Eigen::Matrix3d R = e.matrix(0.37).topLeftCorner<3, 3>();
    CHECK(max_abs(R.transpose() * R - Eigen::Matrix3d::Identity()) < 1e-12);
    CHECK(std::abs(R.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("literal link translation is equivalent to the reduced form") {
  ChainOptions literal;
  literal.literal_link_translation = true;
  for (const auto& raw : {fixtures::table3(), fixtures::table4()}) {
    const auto table = parse_dh_table(raw);
    const auto reduced = compile_chain(table);
    const auto full = compile_chain(table, literal);
    CHECK(full.elements.size() == reduced.elements.size() + 3 * reduced.joint_slots.size());
    std::map<int, double> q;
    for (const auto& s : reduced.joint_slots) q[s.link] = 0.1 * s.link;
    const auto a = fk_pose(reduced, q, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
    const auto b = fk_pose(full, q, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
    for (std::size_t f = 0; f < a.size(); ++f) {
      CAPTURE(a.names[f]);
      CHECK(max_abs(a.values[f].matrix() - b.values[f].matrix()) < 1e-12);
    }
  }
}

TEST_CASE("frozen tooltip poses of the example tables") {
  // Reference values computed independently with numpy.
  const auto t3 = fk_pose(compile_chain(parse_dh_table(fixtures::table3())),
                          {{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 0}});
  CHECK((t3.at("tooltip").p - Eigen::Vector3d(-2.86, -0.18, 3.45)).norm() < 1e-12);
  const auto t4 = fk_pose(compile_chain(parse_dh_table(fixtures::table4())),
                          {{1, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 0}});
  CHECK((t4.at("tooltip").p - Eigen::Vector3d(0, -0.44, 4.27)).norm() < 1e-12);
}
