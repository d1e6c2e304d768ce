// Command-line front end: run, batch, inspect, dump-scene, validate.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "manipsim/errors.hpp"
#include "manipsim/rng.hpp"
#include "manipsim/run.hpp"

namespace {

using namespace manipsim;

enum ExitCode { kOk = 0, kUnknown = 1, kConfig = 2, kIo = 3, kInternal = 4 };

struct Overrides {
  std::optional<std::string> config;
  std::optional<int> mode;
  std::optional<std::uint64_t> seed;
  std::optional<double> duration;
  std::optional<double> rate;
  std::optional<std::string> out;
  std::optional<int> batch;
  std::optional<std::string> format;
  std::optional<std::string> dh, joints, base;
  std::optional<std::string> gimbal;
  bool no_noise = false;
  bool randomize_each_run = false;
  bool gravity = false;
  bool world = false;
};

void add_run_flags(CLI::App* cmd, Overrides& o, bool with_batch) {
  cmd->add_option("--config", o.config, "Run configuration file (JSON); flags override its keys");
  cmd->add_option("--mode", o.mode, "1 = randomize configuration, 2 = read input tables")
      ->check(CLI::IsMember({1, 2}));
  cmd->add_option("--seed", o.seed, "Seed for configuration draws and sensor noise");
  cmd->add_option("--duration", o.duration, "Simulated time [s]");
  cmd->add_option("--rate", o.rate, "Sample rate [Hz]");
  cmd->add_option("--out", o.out, with_batch ? "Output directory" : "Dataset path");
  if (with_batch) cmd->add_option("--batch", o.batch, "Number of runs");
  cmd->add_option("--format", o.format, "Dataset format")->check(CLI::IsMember({"csv", "binary"}));
  cmd->add_option("--dh", o.dh, "MODE 2 DH table (CSV 8x5, or a manifest)");
  cmd->add_option("--joints", o.joints, "MODE 2 joint oscillation table (CSV 8x5, or a manifest)");
  cmd->add_option("--base", o.base, "MODE 2 base oscillation table (CSV 2x4/6x4, or a manifest)");
  cmd->add_option("--gimbal-order", o.gimbal, "Base gimbal axis order, e.g. XYZ");
  cmd->add_flag("--no-noise", o.no_noise, "Disable IMU noise");
  cmd->add_flag("--randomize-each-run", o.randomize_each_run, "Advance the seed and re-draw after each run");
  cmd->add_flag("--gravity", o.gravity, "Accelerometers report specific force (include gravity)");
  cmd->add_flag("--world-frame", o.world, "Resolve IMU signals in the world frame instead of the body frame");
}

RunConfig build_config(const Overrides& o) {
  RunConfig cfg;
  if (o.config) apply_config_file(cfg, *o.config);
  if (o.mode) cfg.mode.mode = static_cast<Mode>(*o.mode);
  if (o.seed) cfg.seed = *o.seed;
  if (o.duration) cfg.duration = *o.duration;
  if (o.rate) cfg.sample_rate = *o.rate;
  if (o.out) cfg.out = *o.out;
  if (o.batch) cfg.batch_count = *o.batch;
  if (o.format) cfg.data_format = *o.format == "csv" ? DataFormat::Csv : DataFormat::Binary;
  if (o.dh) cfg.dh_path = *o.dh;
  if (o.joints) cfg.joints_path = *o.joints;
  if (o.base) cfg.base_path = *o.base;
  if (o.gimbal) {
    const auto g = parse_gimbal_order(*o.gimbal);
    if (!g) throw ConfigError("--gimbal-order must be a permutation of XYZ");
    cfg.chain.gimbal_order = *g;
  }
  if (o.no_noise) cfg.noise = false;
  if (o.randomize_each_run) cfg.mode.randomize_each_run = true;
  if (o.gravity) cfg.imu.include_gravity = true;
  if (o.world) cfg.imu.resolve_in = Resolution::World;
  return cfg;
}

RunTables resolve_tables(const RunConfig& cfg, bool print_warnings) {
  ProvidedTables provided;
  if (cfg.mode.mode == Mode::FromInputs) {
    if (cfg.dh_path) provided.dh = load_table(*cfg.dh_path, "senSenDH");
    if (cfg.joints_path) provided.joints = load_table(*cfg.joints_path, "senSenJ");
    if (cfg.base_path) provided.base = load_table(*cfg.base_path, "senSenB");
  }
  auto r = resolve_inputs(cfg.mode, provided, cfg.seed, cfg.ranges);
  if (print_warnings)
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  return r.tables;
}

int exit_code_for(ErrorClass c) {
  switch (c) {
    case ErrorClass::Config: return kConfig;
    case ErrorClass::Io: return kIo;
    case ErrorClass::Internal: return kInternal;
  }
  return kUnknown;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconfigurable serial-manipulator simulator and IMU dataset generator"};
  app.require_subcommand(1);

  Overrides run_o, batch_o, scene_o, val_o;
  auto* run_cmd = app.add_subcommand("run", "Simulate one configuration and write a dataset");
  add_run_flags(run_cmd, run_o, false);
  auto* batch_cmd = app.add_subcommand("batch", "Simulate several runs into a directory");
  add_run_flags(batch_cmd, batch_o, true);

  std::string inspect_path;
  auto* inspect_cmd = app.add_subcommand("inspect", "Summarize a dataset or manifest");
  inspect_cmd->add_option("path", inspect_path, "Dataset or manifest file")->required();

  auto* scene_cmd = app.add_subcommand("dump-scene", "List every frame at its rest pose (JSON)");
  add_run_flags(scene_cmd, scene_o, false);

  int val_times = 5;
  double val_step = kDefaultFdStep;
  auto* val_cmd = app.add_subcommand("validate", "Check analytic rates against finite differences");
  add_run_flags(val_cmd, val_o, false);
  val_cmd->add_option("--times", val_times, "Number of random sample times")->check(CLI::PositiveNumber);
  val_cmd->add_option("--step", val_step, "Finite-difference step [s]")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*run_cmd) {
      const auto cfg = build_config(run_o);
      const auto res = run_once(cfg);
      for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "wrote " << res.dataset.string() << " (" << res.manifest.row_count() << " rows x "
                << kColumns << " columns) and " << manifest_path_for(res.dataset).string() << "\n";
    } else if (*batch_cmd) {
      auto cfg = build_config(batch_o);
      if (!batch_o.out && !batch_o.config) cfg.out = "batch";
      const auto res = run_batch(cfg);
      for (const auto& r : res.runs)
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "wrote " << res.runs.size() << " runs; summary " << res.summary.string() << "\n";
    } else if (*inspect_cmd) {
      std::cout << inspect(inspect_path);
    } else if (*scene_cmd) {
      const auto cfg = build_config(scene_o);
      std::cout << dump_scene(resolve_tables(cfg, true), cfg.chain);
    } else if (*val_cmd) {
      const auto cfg = build_config(val_o);
      cfg.validate();
      const auto tables = resolve_tables(cfg, true);
      Xoshiro256 g(mix_key(cfg.seed, 0x76616c6964ULL));
      std::vector<double> times;
      for (int i = 0; i < val_times; ++i) times.push_back(g.uniform(0.0, cfg.duration));
      const auto rep = validate_kinematics(tables, cfg.chain, times, val_step);
      std::printf("frames checked: %zu\n", rep.frames_checked);
      std::printf("max |omega err| = %.3e rad/s   (tol 1e-5)\n", rep.max_omega);
      std::printf("max |v err|     = %.3e m/s     (tol 1e-5)\n", rep.max_v);
      std::printf("max |alpha err| = %.3e rad/s^2 (tol 1e-3)\n", rep.max_alpha);
      std::printf("max |a err|     = %.3e m/s^2   (tol 1e-3)\n", rep.max_a);
      std::printf("%s\n", rep.passed() ? "PASS" : "FAIL");
      return rep.passed() ? kOk : kInternal;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.error_class());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
