#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace manipsim {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr int kNumLinks = 6;
inline constexpr int kToolRow = 7;  // 1-based row numbers of the extended table
inline constexpr int kBaseRow = 8;

enum class LinkType { Empty = 0, Revolute = 1, Prismatic = 2 };

char link_type_letter(LinkType t);  // 'E', 'R', 'P'

struct DHRow {
  double alpha = 0.0;  // twist about x [rad]
  double a = 0.0;      // length along x [m]
  double theta = 0.0;  // rotation about z [rad]; only prismatic links apply it
  double d = 0.0;      // offset along z [m]; rail length for prismatic links
  LinkType link_type = LinkType::Empty;

  bool operator==(const DHRow&) const = default;
};

/// Extended DH table: rows 1-6 are modular links, row 7 the tool, row 8 the base.
struct DHTable {
  std::array<DHRow, 8> rows{};

  const DHRow& link(int i) const { return rows.at(static_cast<std::size_t>(i - 1)); }
  DHRow& link(int i) { return rows.at(static_cast<std::size_t>(i - 1)); }
  const DHRow& tool() const { return rows[kToolRow - 1]; }
  const DHRow& base() const { return rows[kBaseRow - 1]; }

  /// 8x5 matrix form: alpha, a, theta, d, link type.
  Matrix to_matrix() const;
  bool operator==(const DHTable&) const = default;
};

/// Validates an 8x5 numeric matrix. Throws DimensionError, InvalidLinkType or
/// NonFiniteValue.
DHTable parse_dh_table(const Matrix& raw);

/// Fixed change of axes from the world convention (x right, y forward, z up)
/// into DH axes, and its inverse.
Eigen::Matrix4d world_to_dh();
Eigen::Matrix4d dh_to_world();

enum class ElementKind {
  WorldToDH,
  DHToWorld,
  RotX,
  RotZ,
  TransX,
  TransZ,
  JointRotZ,
  JointTransZ,
  BaseCartesian,
  BaseGimbal,
};

const char* element_kind_name(ElementKind k);

struct ElementaryTransform {
  ElementKind kind;
  double value = 0.0;  // angle or length for the constant kinds
  int link = 0;        // 1-6 for link elements, 7 tool, 8 base

  /// Homogeneous matrix of a constant element. Joint and base elements need a
  /// joint value; pass it through `q` (ignored for constant kinds).
  Eigen::Matrix4d matrix(double q = 0.0) const;
  bool is_constant() const;
};

enum class SensorSite { Base, LinkMid, LinkEnd, Tool, Tooltip };

/// A named frame recorded while walking the element list.
///
/// The frame is taken after `position` elements have been applied, then
/// displaced by `offset` (expressed in the frame at that point) without
/// affecting the rest of the chain.
struct Attachment {
  std::string name;
  SensorSite site;
  int link = 0;
  std::size_t position = 0;
  Eigen::Vector3d offset = Eigen::Vector3d::Zero();
};

/// Where the two link IMUs sit on each link. Fractions are along the link
/// length `a`; the lateral offset is along the link frame's y-axis, +w for the
/// mid sensor and -w for the end sensor so they do not share an axis.
struct SensorGeometry {
  double mid_fraction = 0.5;
  double end_fraction = 0.9;
  double lateral_offset = 0.05;
};

/// Rotation axes of the base gimbal, applied intrinsically in this order.
using GimbalOrder = std::array<int, 3>;  // 0 = x, 1 = y, 2 = z
inline constexpr GimbalOrder kGimbalXYZ{0, 1, 2};

std::optional<GimbalOrder> parse_gimbal_order(const std::string& s);
std::string gimbal_order_name(const GimbalOrder& g);

struct ChainOptions {
  SensorGeometry geometry{};
  GimbalOrder gimbal_order = kGimbalXYZ;
  /// Emit the link translation as the drawn sequence (counter-rotation, two
  /// half translations, re-entry) instead of a single TransX(a).
  bool literal_link_translation = false;
};

struct JointSlot {
  int link;
  LinkType type;
};

struct ChainPlan {
  std::vector<ElementaryTransform> elements;
  std::vector<Attachment> sensors;  // base, link mid/end pairs, tool
  Attachment tooltip;
  std::vector<JointSlot> joint_slots;
  GimbalOrder gimbal_order = kGimbalXYZ;
  DHTable table;

  /// Sensors followed by the tooltip.
  std::vector<const Attachment*> frames() const;
  LinkType link_type(int link) const;
  const Attachment* find(const std::string& name) const;
};

std::vector<ElementaryTransform> plan_revolute_link(const DHRow& row, int link_index,
                                                    bool literal_translation = false);
std::vector<ElementaryTransform> plan_prismatic_link(const DHRow& row, int link_index,
                                                     bool literal_translation = false);
std::vector<ElementaryTransform> plan_empty_link(int link_index);
std::vector<ElementaryTransform> plan_base();
std::vector<ElementaryTransform> plan_tool(const DHRow& row);

ChainPlan compile_chain(const DHTable& table, const ChainOptions& options = {});

/// Rotation about a principal axis (0 = x, 1 = y, 2 = z).
Eigen::Matrix3d axis_rotation(int axis, double angle);

}  // namespace manipsim
