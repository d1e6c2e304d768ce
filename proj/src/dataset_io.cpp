#include "manipsim/dataset_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "manipsim/errors.hpp"
#include "manipsim/rng.hpp"

namespace manipsim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr char kBinaryMagic[8] = {'M', 'S', 'I', 'M', 'B', 'I', 'N', '1'};
constexpr const char* kChannels[6] = {"wx", "wy", "wz", "ax", "ay", "az"};

std::vector<std::string> build_column_names() {
  std::vector<std::string> n{"time"};
  for (int i = 1; i <= 6; ++i) n.push_back("q" + std::to_string(i));
  for (const char* c : kChannels) n.push_back(std::string("base_") + c);
  for (const char* c : kChannels) n.push_back(std::string("tool_") + c);
  for (int i = 1; i <= 6; ++i)
    for (const char* pos : {"mid", "end"})
      for (const char* c : kChannels)
        n.push_back("link" + std::to_string(i) + "_" + pos + "_" + c);
  return n;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

const std::vector<std::string>& column_names() {
  static const std::vector<std::string> names = build_column_names();
  return names;
}

std::size_t slot_column(int slot) { return 7 + 6 * static_cast<std::size_t>(slot); }

Row DatasetRecord::to_row() const {
  Row r{};
  r[0] = time;
  for (std::size_t i = 0; i < 6; ++i) r[1 + i] = joint_values[i];
  auto put = [&r](int slot, const ImuSample& s) {
    std::copy(s.values.begin(), s.values.end(), r.begin() + static_cast<long>(slot_column(slot)));
  };
  put(0, base_imu);
  put(1, tool_imu);
  for (int i = 1; i <= 6; ++i) {
    put(2 * i, link_imus[static_cast<std::size_t>(i - 1)][0]);
    put(2 * i + 1, link_imus[static_cast<std::size_t>(i - 1)][1]);
  }
  return r;
}

DatasetRecord assemble_record(double t, const std::array<MotionSample, 6>& joints,
                              const std::vector<ImuSample>& imu, const ChainPlan& plan) {
  const auto sensors = place_sensors(plan);
  if (imu.size() != sensors.size()) {
    std::ostringstream os;
    os << "plan has " << sensors.size() << " sensors but " << imu.size() << " samples were given";
    throw InconsistentPlan(os.str());
  }
  DatasetRecord rec;
  rec.time = t;
  for (const auto& slot : plan.joint_slots)
    rec.joint_values[static_cast<std::size_t>(slot.link - 1)] =
        joints[static_cast<std::size_t>(slot.link - 1)].q;
  for (std::size_t k = 0; k < sensors.size(); ++k) {
    const int slot = sensors[k].slot;
    if (slot == 0) {
      rec.base_imu = imu[k];
    } else if (slot == 1) {
      rec.tool_imu = imu[k];
    } else {
      const int link = slot / 2;
      if (plan.link_type(link) == LinkType::Empty)
        throw InconsistentPlan("sensor on empty link " + std::to_string(link));
      rec.link_imus[static_cast<std::size_t>(link - 1)][static_cast<std::size_t>(slot % 2)] = imu[k];
    }
  }
  return rec;
}

std::size_t RunManifest::row_count() const {
  const double n = duration * sample_rate;
  // Tolerate representation error so that e.g. 2.3 s at 100 Hz gives 231 rows.
  return static_cast<std::size_t>(std::floor(n + 1e-9 * std::max(1.0, n))) + 1;
}

fs::path manifest_path_for(const fs::path& dataset) {
  fs::path p = dataset;
  p.replace_extension(".manifest.json");
  return p;
}

std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ConfigError(std::string(what) + " must be an array of rows");
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j[0].size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != j[0].size())
      throw DimensionError(std::string(what) + " has ragged rows");
    for (std::size_t k = 0; k < j[i].size(); ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
  }
  return m;
}

json vec_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

json range_json(const Range& r) { return json::array({r.lo, r.hi}); }

Range range_from_json(const json& j, const char* key) {
  const auto v = j.at(key).get<std::vector<double>>();
  if (v.size() != 2) throw ConfigError(std::string("randomization.") + key + " must be [lo, hi]");
  return {v[0], v[1]};
}

json ranges_json(const RandomRanges& r) {
  return {
      {"a", range_json(r.a)},
      {"d", range_json(r.d)},
      {"angle_choices", r.angle_choices},
      {"link_type_weights", r.link_type_weights},
      {"oscillation_source", "built-in defaults; no published oscillation ranges exist"},
      {"revolute_amplitude", range_json(r.revolute_amplitude)},
      {"prismatic_amplitude", range_json(r.prismatic_amplitude)},
      {"frequency", range_json(r.frequency)},
      {"phase", range_json(r.phase)},
      {"bias", range_json(r.bias)},
      {"base_translation_amplitude", range_json(r.base_translation_amplitude)},
      {"base_rotation_amplitude", range_json(r.base_rotation_amplitude)},
  };
}

RandomRanges ranges_from_json(const json& j) {
  RandomRanges r;
  r.a = range_from_json(j, "a");
  r.d = range_from_json(j, "d");
  r.angle_choices = j.at("angle_choices").get<std::vector<double>>();
  r.link_type_weights = j.at("link_type_weights").get<std::array<double, 3>>();
  r.revolute_amplitude = range_from_json(j, "revolute_amplitude");
  r.prismatic_amplitude = range_from_json(j, "prismatic_amplitude");
  r.frequency = range_from_json(j, "frequency");
  r.phase = range_from_json(j, "phase");
  r.bias = range_from_json(j, "bias");
  r.base_translation_amplitude = range_from_json(j, "base_translation_amplitude");
  r.base_rotation_amplitude = range_from_json(j, "base_rotation_amplitude");
  return r;
}

}  // namespace

std::string manifest_to_string(const RunManifest& m) {
  json j;
  j["format_version"] = m.format_version;
  j["prng"] = m.prng.empty() ? std::string(kPrngId) : m.prng;
  j["seed"] = m.seed;
  j["mode"] = static_cast<int>(m.mode.mode);
  j["randomize_each_run"] = m.mode.randomize_each_run;
  j["sample_rate"] = m.sample_rate;
  j["duration"] = m.duration;
  j["rows"] = m.row_count();
  j["columns"] = kColumns;
  j["data_format"] = m.data_format == DataFormat::Csv ? "csv" : "binary-f64le";
  j["dataset_file"] = m.dataset_file;
  j["noise"] = m.noise;
  j["imu"] = {
      {"resolve_in", m.imu.resolve_in == Resolution::Body ? "body" : "world"},
      {"include_gravity", m.imu.include_gravity},
      {"gravity", vec_json(m.imu.gravity)},
      {"sigma_gyro", m.imu.sigma_gyro},
      {"sigma_accel", m.imu.sigma_accel},
  };
  j["sensor_geometry"] = {
      {"mid_fraction", m.chain.geometry.mid_fraction},
      {"end_fraction", m.chain.geometry.end_fraction},
      {"lateral_offset", m.chain.geometry.lateral_offset},
  };
  j["gimbal_order"] = gimbal_order_name(m.chain.gimbal_order);
  j["channel_order"] = json::array({"wx", "wy", "wz", "ax", "ay", "az"});
  j["randomization"] = ranges_json(m.ranges);
  j["senSenDH"] = matrix_json(m.tables.dh.to_matrix());
  j["senSenJ"] = matrix_json(m.tables.joints.to_matrix());
  j["senSenB"] = matrix_json(m.tables.base.to_matrix());
  return j.dump(2) + "\n";
}

RunManifest manifest_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatVersionMismatch(std::string("manifest is truncated or not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("format_version"))
    throw FormatVersionMismatch("manifest has no format_version field");
  RunManifest m;
  try {
    m.format_version = j.at("format_version").get<int>();
    if (m.format_version != kFormatVersion)
      throw FormatVersionMismatch("manifest format_version " + std::to_string(m.format_version) +
                                  " is not supported (expected " +
                                  std::to_string(kFormatVersion) + ")");
    m.prng = j.at("prng").get<std::string>();
    if (m.prng != kPrngId) throw FormatVersionMismatch("manifest PRNG '" + m.prng + "' is not supported");
    m.seed = j.at("seed").get<std::uint64_t>();
    const int mode = j.at("mode").get<int>();
    if (mode != 1 && mode != 2) throw ConfigError("manifest mode must be 1 or 2");
    m.mode.mode = static_cast<Mode>(mode);
    m.mode.randomize_each_run = j.at("randomize_each_run").get<bool>();
    m.sample_rate = j.at("sample_rate").get<double>();
    m.duration = j.at("duration").get<double>();
    const auto fmt = j.at("data_format").get<std::string>();
    if (fmt == "csv") m.data_format = DataFormat::Csv;
    else if (fmt == "binary-f64le") m.data_format = DataFormat::Binary;
    else throw FormatVersionMismatch("unknown data_format '" + fmt + "'");
    m.dataset_file = j.value("dataset_file", std::string{});
    m.noise = j.at("noise").get<bool>();
    const auto& imu = j.at("imu");
    m.imu.resolve_in = imu.at("resolve_in").get<std::string>() == "world" ? Resolution::World
                                                                         : Resolution::Body;
    m.imu.include_gravity = imu.at("include_gravity").get<bool>();
    const auto g = imu.at("gravity").get<std::vector<double>>();
    if (g.size() != 3) throw ConfigError("imu.gravity must have three entries");
    m.imu.gravity = {g[0], g[1], g[2]};
    m.imu.sigma_gyro = imu.at("sigma_gyro").get<double>();
    m.imu.sigma_accel = imu.at("sigma_accel").get<double>();
    m.imu.rng_seed = m.seed;
    const auto& geo = j.at("sensor_geometry");
    m.chain.geometry.mid_fraction = geo.at("mid_fraction").get<double>();
    m.chain.geometry.end_fraction = geo.at("end_fraction").get<double>();
    m.chain.geometry.lateral_offset = geo.at("lateral_offset").get<double>();
    const auto order = parse_gimbal_order(j.at("gimbal_order").get<std::string>());
    if (!order) throw ConfigError("manifest gimbal_order is not a permutation of XYZ");
    m.chain.gimbal_order = *order;
    if (j.contains("randomization")) m.ranges = ranges_from_json(j.at("randomization"));
    m.tables.dh = parse_dh_table(matrix_from_json(j.at("senSenDH"), "senSenDH"));
    m.tables.joints = parse_joint_table(matrix_from_json(j.at("senSenJ"), "senSenJ"));
    m.tables.base = parse_base_table(matrix_from_json(j.at("senSenB"), "senSenB"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifest field error: ") + e.what());
  }
  return m;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

void write_manifest(const RunManifest& m, const fs::path& path) {
  write_file_atomic(path, manifest_to_string(m));
}

RunManifest load_manifest(const fs::path& path) { return manifest_from_string(read_file(path)); }

namespace {

std::string csv_text(const std::vector<Row>& rows) {
  std::string out;
  out.reserve(rows.size() * kColumns * 12 + 2048);
  const auto& names = column_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  out += '\n';
  char buf[32];
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < kColumns; ++i) {
      if (i) out += ',';
      auto res = std::to_chars(buf, buf + sizeof(buf), r[i]);
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  return out;
}

template <typename T>
void append_le(std::string& out, T v) {
  auto bits = std::bit_cast<std::array<char, sizeof(T)>>(v);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
  out.append(bits.data(), bits.size());
}

template <typename T>
T read_le(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw FormatVersionMismatch("binary dataset is truncated");
  std::array<char, sizeof(T)> bits;
  std::memcpy(bits.data(), in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
  pos += sizeof(T);
  return std::bit_cast<T>(bits);
}

// Layout: 8-byte magic, u32 format version, u32 column count, u64 row count,
// then rows of little-endian f64 in row-major order.
std::string binary_blob(const std::vector<Row>& rows) {
  std::string out(kBinaryMagic, sizeof(kBinaryMagic));
  append_le<std::uint32_t>(out, kFormatVersion);
  append_le<std::uint32_t>(out, static_cast<std::uint32_t>(kColumns));
  append_le<std::uint64_t>(out, rows.size());
  for (const auto& r : rows)
    for (double x : r) append_le<double>(out, x);
  return out;
}

std::vector<Row> parse_binary(const std::string& in) {
  if (in.size() < sizeof(kBinaryMagic) || std::memcmp(in.data(), kBinaryMagic, sizeof(kBinaryMagic)))
    throw FormatVersionMismatch("not a binary dataset (bad magic)");
  std::size_t pos = sizeof(kBinaryMagic);
  const auto version = read_le<std::uint32_t>(in, pos);
  if (version != kFormatVersion)
    throw FormatVersionMismatch("binary dataset format version " + std::to_string(version) +
                                " is not supported");
  const auto cols = read_le<std::uint32_t>(in, pos);
  if (cols != kColumns) throw FormatVersionMismatch("binary dataset has " + std::to_string(cols) + " columns");
  const auto n = read_le<std::uint64_t>(in, pos);
  if (in.size() - pos != n * kColumns * sizeof(double))
    throw FormatVersionMismatch("binary dataset is truncated");
  std::vector<Row> rows(n);
  for (auto& r : rows)
    for (double& x : r) x = read_le<double>(in, pos);
  return rows;
}

std::vector<Row> parse_csv(const std::string& in, const std::string& where) {
  std::istringstream ss(in);
  std::string line;
  if (!std::getline(ss, line)) throw FormatVersionMismatch(where + ": empty dataset");
  if (line.rfind("time,", 0) != 0) throw FormatVersionMismatch(where + ": missing dataset header");
  std::size_t header_cols = 1;
  for (char c : line) header_cols += c == ',';
  if (header_cols != kColumns)
    throw FormatVersionMismatch(where + ": header has " + std::to_string(header_cols) +
                                " columns, expected " + std::to_string(kColumns));
  std::vector<Row> rows;
  std::size_t lineno = 1;
  while (std::getline(ss, line)) {
    ++lineno;
    if (line.empty()) continue;
    Row r{};
    std::size_t col = 0;
    const char* p = line.data();
    const char* end = p + line.size();
    while (true) {
      if (col >= kColumns) throw FormatVersionMismatch(where + ": too many fields on line " + std::to_string(lineno));
      auto res = std::from_chars(p, end, r[col]);
      if (res.ec != std::errc{}) throw IoError(where + ": bad number on line " + std::to_string(lineno));
      ++col;
      p = res.ptr;
      if (p == end) break;
      if (*p != ',') throw IoError(where + ": bad separator on line " + std::to_string(lineno));
      ++p;
    }
    if (col != kColumns)
      throw FormatVersionMismatch(where + ": line " + std::to_string(lineno) + " has " +
                                  std::to_string(col) + " fields (truncated file?)");
    rows.push_back(r);
  }
  if (!in.empty() && in.back() != '\n')
    throw FormatVersionMismatch(where + ": file does not end with a newline (truncated?)");
  return rows;
}

}  // namespace

void write_dataset(const std::vector<Row>& rows, RunManifest manifest, const fs::path& path) {
  manifest.dataset_file = path.filename().string();
  if (manifest.prng.empty()) manifest.prng = kPrngId;
  const std::string body = manifest.data_format == DataFormat::Csv ? csv_text(rows) : binary_blob(rows);
  write_file_atomic(path, body);
  write_manifest(manifest, manifest_path_for(path));
}

std::vector<Row> read_dataset(const fs::path& path) {
  const std::string in = read_file(path);
  if (in.size() >= sizeof(kBinaryMagic) && !std::memcmp(in.data(), kBinaryMagic, sizeof(kBinaryMagic)))
    return parse_binary(in);
  return parse_csv(in, path.string());
}

Matrix read_matrix_csv(const fs::path& path) {
  std::istringstream ss(read_file(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> r;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      double x;
      auto res = std::from_chars(p, end, x);
      if (res.ec != std::errc{}) throw ConfigError(path.string() + ": bad number in '" + line + "'");
      r.push_back(x);
      p = res.ptr;
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p < end && *p == ',') ++p;
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw DimensionError(path.string() + ": empty table");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw DimensionError(path.string() + ": ragged table");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return m;
}

void write_matrix_csv(const Matrix& m, const fs::path& path) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

}  // namespace manipsim
