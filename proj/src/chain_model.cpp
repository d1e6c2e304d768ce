#include "manipsim/chain_model.hpp"

#include <cmath>
#include <sstream>

#include "manipsim/errors.hpp"

namespace manipsim {

char link_type_letter(LinkType t) {
  switch (t) {
    case LinkType::Empty: return 'E';
    case LinkType::Revolute: return 'R';
    case LinkType::Prismatic: return 'P';
  }
  return '?';
}

Matrix DHTable::to_matrix() const {
  Matrix m(8, 5);
  for (int i = 0; i < 8; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    m(i, 0) = r.alpha;
    m(i, 1) = r.a;
    m(i, 2) = r.theta;
    m(i, 3) = r.d;
    m(i, 4) = static_cast<double>(static_cast<int>(r.link_type));
  }
  return m;
}

DHTable parse_dh_table(const Matrix& raw) {
  if (raw.rows() != 8 || raw.cols() != 5) {
    std::ostringstream os;
    os << "DH table must be 8x5, got " << raw.rows() << "x" << raw.cols();
    throw DimensionError(os.str());
  }
  DHTable t;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 5; ++j) {
      if (!std::isfinite(raw(i, j))) {
        std::ostringstream os;
        os << "DH table entry (" << i + 1 << "," << j + 1 << ") is not finite";
        throw NonFiniteValue(os.str());
      }
    }
    const double code = raw(i, 4);
    if (code != 0.0 && code != 1.0 && code != 2.0) {
      std::ostringstream os;
      os << "DH table row " << i + 1 << ": link type " << code << " is not 0, 1 or 2";
      throw InvalidLinkType(os.str());
    }
    auto& r = t.rows[static_cast<std::size_t>(i)];
    r.alpha = raw(i, 0);
    r.a = raw(i, 1);
    r.theta = raw(i, 2);
    r.d = raw(i, 3);
    r.link_type = static_cast<LinkType>(static_cast<int>(code));
  }
  return t;
}

Eigen::Matrix4d world_to_dh() {
  Eigen::Matrix4d m;
  m << 0, -1, 0, 0,
       0, 0, -1, 0,
       1, 0, 0, 0,
       0, 0, 0, 1;
  return m;
}

Eigen::Matrix4d dh_to_world() {
  Eigen::Matrix4d m;
  m << 0, 0, 1, 0,
       -1, 0, 0, 0,
       0, -1, 0, 0,
       0, 0, 0, 1;
  return m;
}

Eigen::Matrix3d axis_rotation(int axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix3d r;
  switch (axis) {
    case 0: r << 1, 0, 0, 0, c, -s, 0, s, c; break;
    case 1: r << c, 0, s, 0, 1, 0, -s, 0, c; break;
    default: r << c, -s, 0, s, c, 0, 0, 0, 1; break;
  }
  return r;
}

const char* element_kind_name(ElementKind k) {
  switch (k) {
    case ElementKind::WorldToDH: return "WorldToDH";
    case ElementKind::DHToWorld: return "DHToWorld";
    case ElementKind::RotX: return "RotX";
    case ElementKind::RotZ: return "RotZ";
    case ElementKind::TransX: return "TransX";
    case ElementKind::TransZ: return "TransZ";
    case ElementKind::JointRotZ: return "JointRotZ";
    case ElementKind::JointTransZ: return "JointTransZ";
    case ElementKind::BaseCartesian: return "BaseCartesian";
    case ElementKind::BaseGimbal: return "BaseGimbal";
  }
  return "?";
}

bool ElementaryTransform::is_constant() const {
  switch (kind) {
    case ElementKind::JointRotZ:
    case ElementKind::JointTransZ:
    case ElementKind::BaseCartesian:
    case ElementKind::BaseGimbal:
      return false;
    default:
      return true;
  }
}

Eigen::Matrix4d ElementaryTransform::matrix(double q) const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  switch (kind) {
    case ElementKind::WorldToDH: return world_to_dh();
    case ElementKind::DHToWorld: return dh_to_world();
    case ElementKind::RotX: m.topLeftCorner<3, 3>() = axis_rotation(0, value); break;
    case ElementKind::RotZ: m.topLeftCorner<3, 3>() = axis_rotation(2, value); break;
    case ElementKind::TransX: m(0, 3) = value; break;
    case ElementKind::TransZ: m(2, 3) = value; break;
    case ElementKind::JointRotZ: m.topLeftCorner<3, 3>() = axis_rotation(2, q); break;
    case ElementKind::JointTransZ: m(2, 3) = q; break;
    case ElementKind::BaseCartesian:
    case ElementKind::BaseGimbal:
      // Six-valued; composed by the kinematics module from base samples.
      break;
  }
  return m;
}

std::optional<GimbalOrder> parse_gimbal_order(const std::string& s) {
  if (s.size() != 3) return std::nullopt;
  GimbalOrder g{};
  bool seen[3] = {false, false, false};
  for (std::size_t i = 0; i < 3; ++i) {
    const char c = static_cast<char>(s[i] | 0x20);
    if (c < 'x' || c > 'z') return std::nullopt;
    const int ax = c - 'x';
    if (seen[ax]) return std::nullopt;
    seen[ax] = true;
    g[i] = ax;
  }
  return g;
}

std::string gimbal_order_name(const GimbalOrder& g) {
  std::string s;
  for (int ax : g) s.push_back(static_cast<char>('X' + ax));
  return s;
}

namespace {

void append_link_translation(std::vector<ElementaryTransform>& out, double a, int link,
                             bool literal) {
  if (!literal) {
    out.push_back({ElementKind::TransX, a, link});
    return;
  }
  // Counter-rotate so z runs along the link, cover it in two halves, then
  // re-enter the DH frame.
  out.push_back({ElementKind::DHToWorld, 0.0, link});
  out.push_back({ElementKind::TransZ, a / 2.0, link});
  out.push_back({ElementKind::TransZ, a / 2.0, link});
  out.push_back({ElementKind::WorldToDH, 0.0, link});
}

}  // namespace

std::vector<ElementaryTransform> plan_revolute_link(const DHRow& row, int link_index,
                                                    bool literal_translation) {
  std::vector<ElementaryTransform> out;
  out.push_back({ElementKind::WorldToDH, 0.0, link_index});
  out.push_back({ElementKind::RotX, row.alpha, link_index});
  out.push_back({ElementKind::TransZ, row.d, link_index});
  out.push_back({ElementKind::JointRotZ, 0.0, link_index});
  append_link_translation(out, row.a, link_index, literal_translation);
  out.push_back({ElementKind::DHToWorld, 0.0, link_index});
  return out;
}

std::vector<ElementaryTransform> plan_prismatic_link(const DHRow& row, int link_index,
                                                     bool literal_translation) {
  std::vector<ElementaryTransform> out;
  out.push_back({ElementKind::WorldToDH, 0.0, link_index});
  out.push_back({ElementKind::RotX, row.alpha, link_index});
  out.push_back({ElementKind::RotZ, row.theta, link_index});
  // row.d is the rail length; the displacement comes from the trajectory.
  out.push_back({ElementKind::JointTransZ, 0.0, link_index});
  append_link_translation(out, row.a, link_index, literal_translation);
  out.push_back({ElementKind::DHToWorld, 0.0, link_index});
  return out;
}

std::vector<ElementaryTransform> plan_empty_link(int /*link_index*/) { return {}; }

std::vector<ElementaryTransform> plan_base() {
  return {{ElementKind::BaseCartesian, 0.0, kBaseRow}, {ElementKind::BaseGimbal, 0.0, kBaseRow}};
}

std::vector<ElementaryTransform> plan_tool(const DHRow& row) {
  return {{ElementKind::TransZ, row.a / 2.0, kToolRow},
          {ElementKind::TransZ, row.a / 2.0, kToolRow},
          {ElementKind::WorldToDH, 0.0, kToolRow}};
}

ChainPlan compile_chain(const DHTable& table, const ChainOptions& options) {
  ChainPlan plan;
  plan.table = table;
  plan.gimbal_order = options.gimbal_order;
  const auto& geo = options.geometry;

  auto append = [&plan](const std::vector<ElementaryTransform>& els) {
    plan.elements.insert(plan.elements.end(), els.begin(), els.end());
  };

  append(plan_base());
  plan.sensors.push_back({"base_imu", SensorSite::Base, kBaseRow, plan.elements.size(), Eigen::Vector3d::Zero()});

  for (int i = 1; i <= kNumLinks; ++i) {
    const DHRow& row = table.link(i);
    const std::size_t start = plan.elements.size();
    switch (row.link_type) {
      case LinkType::Empty: append(plan_empty_link(i)); continue;
      case LinkType::Revolute:
        append(plan_revolute_link(row, i, options.literal_link_translation));
        break;
      case LinkType::Prismatic:
        append(plan_prismatic_link(row, i, options.literal_link_translation));
        break;
    }
    plan.joint_slots.push_back({i, row.link_type});

    // Mid sensor right after the joint, end sensor just before the final
    // exit from the DH frame; both in the link frame whose x runs along the link.
    const std::size_t joint_pos = start + 3;
    const std::size_t exit_pos = plan.elements.size() - 1;
    const std::string prefix = "link" + std::to_string(i) + "_imu_";
    plan.sensors.push_back({prefix + "mid", SensorSite::LinkMid, i, joint_pos + 1,
                            Eigen::Vector3d(geo.mid_fraction * row.a, geo.lateral_offset, 0.0)});
    plan.sensors.push_back(
        {prefix + "end", SensorSite::LinkEnd, i, exit_pos,
         Eigen::Vector3d((geo.end_fraction - 1.0) * row.a, -geo.lateral_offset, 0.0)});
  }

  append(plan_tool(table.tool()));
  plan.sensors.push_back({"tool_imu", SensorSite::Tool, kToolRow, plan.elements.size(), Eigen::Vector3d::Zero()});
  plan.tooltip = {"tooltip", SensorSite::Tooltip, kToolRow, plan.elements.size(), Eigen::Vector3d::Zero()};
  return plan;
}

std::vector<const Attachment*> ChainPlan::frames() const {
  std::vector<const Attachment*> out;
  out.reserve(sensors.size() + 1);
  for (const auto& s : sensors) out.push_back(&s);
  out.push_back(&tooltip);
  return out;
}

LinkType ChainPlan::link_type(int link) const {
  for (const auto& j : joint_slots)
    if (j.link == link) return j.type;
  return LinkType::Empty;
}

const Attachment* ChainPlan::find(const std::string& name) const {
  for (const auto* f : frames())
    if (f->name == name) return f;
  return nullptr;
}

}  // namespace manipsim
