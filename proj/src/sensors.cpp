#include "manipsim/sensors.hpp"

#include "manipsim/rng.hpp"

namespace manipsim {

ImuSample measure(const FrameState& s, const ImuConfig& c) {
  Eigen::Vector3d w = s.omega;
  Eigen::Vector3d acc = s.a;
  if (c.include_gravity) acc -= c.gravity;
  if (c.resolve_in == Resolution::Body) {
    w = s.R.transpose() * w;
    acc = s.R.transpose() * acc;
  }
  return {{w.x(), w.y(), w.z(), acc.x(), acc.y(), acc.z()}};
}

ImuSample add_noise(const ImuSample& m, const ImuConfig& c, std::uint64_t sensor_id,
                    std::uint64_t sample_index) {
  if (c.sigma_gyro == 0.0 && c.sigma_accel == 0.0) return m;
  Xoshiro256 gen(mix_key(c.rng_seed, sensor_id, sample_index));
  ImuSample out = m;
  for (std::size_t i = 0; i < 6; ++i) {
    const double n = gen.normal();
    out.values[i] += (i < 3 ? c.sigma_gyro : c.sigma_accel) * n;
  }
  return out;
}

std::vector<SensorSpec> place_sensors(const ChainPlan& plan) {
  std::vector<SensorSpec> out;
  const Attachment* tool = nullptr;
  for (const auto& a : plan.sensors) {
    switch (a.site) {
      case SensorSite::Base: out.push_back({&a, 0}); break;
      case SensorSite::Tool: tool = &a; break;
      default: break;
    }
  }
  if (tool) out.push_back({tool, 1});
  for (const auto& a : plan.sensors) {
    if (a.site == SensorSite::LinkMid) out.push_back({&a, 2 * a.link});
    if (a.site == SensorSite::LinkEnd) out.push_back({&a, 2 * a.link + 1});
  }
  return out;
}

}  // namespace manipsim
