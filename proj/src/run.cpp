#include "manipsim/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "manipsim/errors.hpp"
#include "manipsim/rng.hpp"
#include "manipsim/sensors.hpp"

namespace manipsim {

namespace fs = std::filesystem;
using nlohmann::json;

void RunConfig::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) throw ConfigError("duration must be > 0");
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
    throw ConfigError("sample rate must be > 0");
  if (batch_count < 1) throw ConfigError("batch count must be >= 1");
  if (imu.sigma_gyro < 0.0 || imu.sigma_accel < 0.0) throw ConfigError("noise sigmas must be >= 0");
  if (!imu.gravity.allFinite()) throw ConfigError("gravity must be finite");
  ranges.validate();
}

namespace {

Range range_from(const json& j, const char* key) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 2) throw ConfigError(std::string("ranges.") + key + " must be [lo, hi]");
  return {v[0], v[1]};
}

}  // namespace

void apply_config_text(RunConfig& cfg, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    if (j.contains("mode")) {
      const int m = j["mode"].get<int>();
      if (m != 1 && m != 2) throw ConfigError("mode must be 1 or 2");
      cfg.mode.mode = static_cast<Mode>(m);
    }
    if (j.contains("randomize_each_run")) cfg.mode.randomize_each_run = j["randomize_each_run"].get<bool>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("duration")) cfg.duration = j["duration"].get<double>();
    if (j.contains("sample_rate")) cfg.sample_rate = j["sample_rate"].get<double>();
    if (j.contains("noise")) cfg.noise = j["noise"].get<bool>();
    if (j.contains("batch")) cfg.batch_count = j["batch"].get<int>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("format")) {
      const auto f = j["format"].get<std::string>();
      if (f == "csv") cfg.data_format = DataFormat::Csv;
      else if (f == "binary") cfg.data_format = DataFormat::Binary;
      else throw ConfigError("format must be csv or binary");
    }
    if (j.contains("dh")) cfg.dh_path = j["dh"].get<std::string>();
    if (j.contains("joints")) cfg.joints_path = j["joints"].get<std::string>();
    if (j.contains("base")) cfg.base_path = j["base"].get<std::string>();
    if (j.contains("gimbal_order")) {
      const auto g = parse_gimbal_order(j["gimbal_order"].get<std::string>());
      if (!g) throw ConfigError("gimbal_order must be a permutation of XYZ");
      cfg.chain.gimbal_order = *g;
    }
    if (j.contains("imu")) {
      const auto& s = j["imu"];
      if (s.contains("resolve_in")) {
        const auto r = s["resolve_in"].get<std::string>();
        if (r != "body" && r != "world") throw ConfigError("imu.resolve_in must be body or world");
        cfg.imu.resolve_in = r == "body" ? Resolution::Body : Resolution::World;
      }
      if (s.contains("include_gravity")) cfg.imu.include_gravity = s["include_gravity"].get<bool>();
      if (s.contains("gravity")) {
        const auto g = s["gravity"].get<std::vector<double>>();
        if (g.size() != 3) throw ConfigError("imu.gravity must have three entries");
        cfg.imu.gravity = {g[0], g[1], g[2]};
      }
      if (s.contains("sigma_gyro")) cfg.imu.sigma_gyro = s["sigma_gyro"].get<double>();
      if (s.contains("sigma_accel")) cfg.imu.sigma_accel = s["sigma_accel"].get<double>();
    }
    if (j.contains("sensor_geometry")) {
      const auto& g = j["sensor_geometry"];
      auto& geo = cfg.chain.geometry;
      geo.mid_fraction = g.value("mid_fraction", geo.mid_fraction);
      geo.end_fraction = g.value("end_fraction", geo.end_fraction);
      geo.lateral_offset = g.value("lateral_offset", geo.lateral_offset);
    }
    if (j.contains("ranges")) {
      const auto& r = j["ranges"];
      auto& R = cfg.ranges;
      const std::pair<const char*, Range*> keyed[] = {
          {"a", &R.a},
          {"d", &R.d},
          {"revolute_amplitude", &R.revolute_amplitude},
          {"prismatic_amplitude", &R.prismatic_amplitude},
          {"frequency", &R.frequency},
          {"phase", &R.phase},
          {"bias", &R.bias},
          {"base_translation_amplitude", &R.base_translation_amplitude},
          {"base_rotation_amplitude", &R.base_rotation_amplitude},
      };
      for (const auto& [key, dst] : keyed)
        if (r.contains(key)) *dst = range_from(r[key], key);
      if (r.contains("angle_choices")) R.angle_choices = r["angle_choices"].get<std::vector<double>>();
      if (r.contains("link_type_weights")) {
        const auto w = r["link_type_weights"].get<std::vector<double>>();
        if (w.size() != 3) throw ConfigError("ranges.link_type_weights needs three weights");
        R.link_type_weights = {w[0], w[1], w[2]};
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
}

void apply_config_file(RunConfig& cfg, const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

Matrix load_table(const fs::path& path, const std::string& key) {
  if (path.extension() == ".json") {
    const auto m = load_manifest(path);
    if (key == "senSenDH") return m.tables.dh.to_matrix();
    if (key == "senSenJ") return m.tables.joints.to_matrix();
    return m.tables.base.to_matrix();
  }
  return read_matrix_csv(path);
}

RunManifest make_manifest(const RunConfig& cfg, const RunTables& tables, std::uint64_t seed) {
  RunManifest m;
  m.prng = kPrngId;
  m.tables = tables;
  m.seed = seed;
  m.mode = cfg.mode;
  m.sample_rate = cfg.sample_rate;
  m.duration = cfg.duration;
  m.noise = cfg.noise;
  m.imu = cfg.imu;
  m.imu.rng_seed = seed;
  m.chain = cfg.chain;
  m.data_format = cfg.data_format;
  m.ranges = cfg.ranges;
  return m;
}

std::vector<Row> simulate(const RunManifest& manifest) {
  const ChainPlan plan = compile_chain(manifest.tables.dh, manifest.chain);
  const auto sensors = place_sensors(plan);
  ImuConfig imu = manifest.imu;
  imu.rng_seed = manifest.seed;

  const std::size_t n = manifest.row_count();
  std::vector<Row> rows;
  rows.reserve(n);
  std::vector<ImuSample> samples(sensors.size());
  for (std::size_t k = 0; k < n; ++k) {
    const double t = manifest.time_at(k);
    const ChainMotion motion = sample_motion(plan, manifest.tables.joints, manifest.tables.base, t);
    const auto states = evaluate_chain(plan, motion);
    for (std::size_t s = 0; s < sensors.size(); ++s) {
      const auto idx = static_cast<std::size_t>(sensors[s].frame - plan.sensors.data());
      ImuSample m = measure(states.values[idx], imu);
      if (manifest.noise) m = add_noise(m, imu, static_cast<std::uint64_t>(sensors[s].slot), k);
      samples[s] = m;
    }
    rows.push_back(assemble_record(t, motion.joints, samples, plan).to_row());
  }
  return rows;
}

RunResult run_once(const RunConfig& cfg) {
  cfg.validate();
  ProvidedTables provided;
  if (cfg.mode.mode == Mode::FromInputs) {
    if (cfg.dh_path) provided.dh = load_table(*cfg.dh_path, "senSenDH");
    if (cfg.joints_path) provided.joints = load_table(*cfg.joints_path, "senSenJ");
    if (cfg.base_path) provided.base = load_table(*cfg.base_path, "senSenB");
  }
  auto resolved = resolve_inputs(cfg.mode, provided, cfg.seed, cfg.ranges);
  RunResult out;
  out.manifest = make_manifest(cfg, resolved.tables, cfg.seed);
  out.warnings = std::move(resolved.warnings);
  out.dataset = cfg.out;
  if (cfg.out.has_parent_path()) fs::create_directories(cfg.out.parent_path());
  write_dataset(simulate(out.manifest), out.manifest, cfg.out);
  out.manifest.dataset_file = cfg.out.filename().string();
  return out;
}

namespace {

void write_summary(const fs::path& path, const RunConfig& cfg, const std::vector<RunResult>& runs,
                   std::optional<std::pair<int, std::string>> failure) {
  json j;
  j["format_version"] = kFormatVersion;
  j["requested"] = cfg.batch_count;
  j["completed"] = runs.size();
  j["randomize_each_run"] = cfg.mode.randomize_each_run;
  json items = json::array();
  for (std::size_t i = 0; i < runs.size(); ++i)
    items.push_back({{"index", i},
                     {"seed", runs[i].manifest.seed},
                     {"dataset", runs[i].dataset.filename().string()},
                     {"manifest", manifest_path_for(runs[i].dataset).filename().string()}});
  j["runs"] = items;
  if (failure) j["failure"] = {{"index", failure->first}, {"error", failure->second}};
  write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace

BatchResult run_batch(const RunConfig& cfg) {
  cfg.validate();
  BatchResult out;
  fs::create_directories(cfg.out);
  out.summary = cfg.out / "batch_summary.json";

  const char* ext = cfg.data_format == DataFormat::Csv ? ".csv" : ".bin";
  std::uint64_t seed = cfg.seed;
  std::optional<RunTables> tables;
  std::vector<std::string> warnings;
  for (int i = 0; i < cfg.batch_count; ++i) {
    try {
      if (!tables) {
        ProvidedTables provided;
        if (cfg.mode.mode == Mode::FromInputs) {
          if (cfg.dh_path) provided.dh = load_table(*cfg.dh_path, "senSenDH");
          if (cfg.joints_path) provided.joints = load_table(*cfg.joints_path, "senSenJ");
          if (cfg.base_path) provided.base = load_table(*cfg.base_path, "senSenB");
        }
        auto resolved = resolve_inputs(cfg.mode, provided, seed, cfg.ranges);
        tables = resolved.tables;
        warnings = std::move(resolved.warnings);
      }
      char name[32];
      std::snprintf(name, sizeof(name), "run_%04d%s", i, ext);
      RunResult r;
      r.manifest = make_manifest(cfg, *tables, seed);
      r.warnings = std::exchange(warnings, {});
      r.dataset = cfg.out / name;
      write_dataset(simulate(r.manifest), r.manifest, r.dataset);
      r.manifest.dataset_file = name;
      out.runs.push_back(std::move(r));
    } catch (const Error& e) {
      write_summary(out.summary, cfg, out.runs, std::make_pair(i, std::string(e.what())));
      throw Error(e.error_class(), "batch item " + std::to_string(i) + " failed: " + e.what());
    }
    const auto next = post_run_hook(cfg.mode, seed, *tables, cfg.ranges);
    seed = next.seed;
    tables = next.tables;
  }
  write_summary(out.summary, cfg, out.runs, std::nullopt);
  return out;
}

std::string inspect(const fs::path& path) {
  RunManifest m;
  std::optional<std::vector<Row>> rows;
  fs::path data_path;
  if (path.extension() == ".json") {
    m = load_manifest(path);
    if (!m.dataset_file.empty()) data_path = path.parent_path() / m.dataset_file;
  } else {
    data_path = path;
    const auto sidecar = manifest_path_for(path);
    if (!fs::exists(sidecar)) throw IoError("no manifest next to " + path.string() + " (expected " + sidecar.string() + ")");
    m = load_manifest(sidecar);
  }
  if (!data_path.empty() && fs::exists(data_path)) rows = read_dataset(data_path);

  const ChainPlan plan = compile_chain(m.tables.dh, m.chain);
  const auto sensors = place_sensors(plan);
  std::ostringstream os;
  os << "format_version: " << m.format_version << "\n";
  os << "mode: " << static_cast<int>(m.mode.mode) << (m.mode.randomize_each_run ? " (randomize each run)" : "") << "\n";
  os << "seed: " << m.seed << "  prng: " << m.prng << "\n";
  os << "senSenDH: 8x5  senSenJ: 8x5  senSenB: " << m.tables.base.rows.size() << "x4\n";
  os << "joints: " << plan.joint_slots.size() << "\n";
  os << "link types: [";
  for (int i = 1; i <= kNumLinks; ++i) {
    if (i > 1) os << ",";
    const auto t = m.tables.dh.link(i).link_type;
    os << (t == LinkType::Empty ? '-' : link_type_letter(t));
  }
  os << "]\n";
  os << "sensors: " << sensors.size() << "\n";
  os << "sample_rate: " << format_double(m.sample_rate) << " Hz  duration: " << format_double(m.duration)
     << " s  expected rows: " << m.row_count() << "\n";
  if (rows) {
    os << "dataset: " << data_path.filename().string() << "  rows: " << rows->size() << "  columns: " << kColumns;
    if (rows->size() != m.row_count()) os << "  (WARNING: manifest expects " << m.row_count() << ")";
    os << "\n";
  }
  os << "column map:\n";
  os << "  0: time\n  1-6: joint values q1..q6\n";
  os << "  " << slot_column(0) << "-" << slot_column(0) + 5 << ": base_imu\n";
  os << "  " << slot_column(1) << "-" << slot_column(1) + 5 << ": tool_imu\n";
  for (int i = 1; i <= kNumLinks; ++i) {
    os << "  " << slot_column(2 * i) << "-" << slot_column(2 * i) + 11 << ": link" << i
       << " mid+end IMUs";
    if (plan.link_type(i) == LinkType::Empty) os << " (empty, zeros)";
    os << "\n";
  }
  os << "channels per IMU: wx,wy,wz,ax,ay,az\n";
  return os.str();
}

std::string dump_scene(const RunTables& tables, const ChainOptions& options) {
  const ChainPlan plan = compile_chain(tables.dh, options);
  std::map<int, double> zeros;
  for (const auto& s : plan.joint_slots) zeros[s.link] = 0.0;
  const auto poses = fk_pose(plan, zeros);

  json j;
  json elements = json::array();
  for (std::size_t i = 0; i < plan.elements.size(); ++i) {
    const auto& e = plan.elements[i];
    json el = {{"index", i}, {"kind", element_kind_name(e.kind)}, {"link", e.link}};
    if (e.is_constant() && e.kind != ElementKind::WorldToDH && e.kind != ElementKind::DHToWorld)
      el["value"] = e.value;
    elements.push_back(el);
  }
  j["elements"] = elements;
  json frames = json::array();
  const auto fr = plan.frames();
  for (std::size_t f = 0; f < fr.size(); ++f) {
    const auto& pose = poses.values[f];
    json R = json::array();
    for (int r = 0; r < 3; ++r) R.push_back({pose.R(r, 0), pose.R(r, 1), pose.R(r, 2)});
    json frame = {{"name", fr[f]->name},
                  {"link", fr[f]->link},
                  {"position", {pose.p.x(), pose.p.y(), pose.p.z()}},
                  {"rotation", R},
                  {"after_element", static_cast<long>(fr[f]->position) - 1},
                  {"mount_offset", {fr[f]->offset.x(), fr[f]->offset.y(), fr[f]->offset.z()}}};
    if (fr[f]->position > 0)
      frame["after_kind"] = element_kind_name(plan.elements[fr[f]->position - 1].kind);
    frames.push_back(frame);
  }
  j["frames"] = frames;
  j["gimbal_order"] = gimbal_order_name(plan.gimbal_order);
  return j.dump(2) + "\n";
}

ValidationReport validate_kinematics(const RunTables& tables, const ChainOptions& options,
                                     const std::vector<double>& times, double h) {
  const ChainPlan plan = compile_chain(tables.dh, options);
  ValidationReport rep;
  for (double t : times) {
    const auto exact = evaluate_chain(plan, tables.joints, tables.base, t);
    const auto fd = finite_difference_oracle(plan, tables.joints, tables.base, t, h);
    for (std::size_t f = 0; f < exact.size(); ++f) {
      const auto& x = exact.values[f];
      const auto& y = fd.values[f];
      rep.max_omega = std::max(rep.max_omega, (x.omega - y.omega).cwiseAbs().maxCoeff());
      rep.max_v = std::max(rep.max_v, (x.v - y.v).cwiseAbs().maxCoeff());
      rep.max_alpha = std::max(rep.max_alpha, (x.alpha - y.alpha).cwiseAbs().maxCoeff());
      rep.max_a = std::max(rep.max_a, (x.a - y.a).cwiseAbs().maxCoeff());
      ++rep.frames_checked;
    }
  }
  return rep;
}

}  // namespace manipsim
