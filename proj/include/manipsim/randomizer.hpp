#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "manipsim/chain_model.hpp"
#include "manipsim/trajectory.hpp"

namespace manipsim {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct RandomRanges {
  Range a{0.8, 0.9};
  Range d{0.1, 0.3};  // inferred from the example tables (0.12 - 0.29)
  std::vector<double> angle_choices{-std::numbers::pi / 2, 0.0, std::numbers::pi / 2};
  std::array<double, 3> link_type_weights{1.0, 1.0, 1.0};  // empty, revolute, prismatic

  // Oscillation ranges have no published values; these are defaults only.
  Range revolute_amplitude{0.0, std::numbers::pi / 2};
  Range prismatic_amplitude{0.0, 0.3};
  Range frequency{0.1, 2.0};
  Range phase{0.0, 2.0 * std::numbers::pi};
  Range bias{0.0, 0.0};
  Range base_translation_amplitude{0.0, 0.3};
  Range base_rotation_amplitude{0.0, std::numbers::pi / 2};

  /// Throws InvalidRange on lo > hi, non-finite bounds, empty angle set or
  /// bad weights.
  void validate() const;
};

struct RunTables {
  DHTable dh;
  JointOscTable joints;
  BaseOscTable base;

  bool operator==(const RunTables&) const = default;
};

RunTables randomize_config(std::uint64_t seed, const RandomRanges& ranges = {});

enum class Mode { Randomize = 1, FromInputs = 2 };

struct RunMode {
  Mode mode = Mode::Randomize;
  bool randomize_each_run = false;
};

/// Tables supplied for MODE 2; any of them may be missing.
struct ProvidedTables {
  std::optional<Matrix> dh;
  std::optional<Matrix> joints;
  std::optional<Matrix> base;
};

struct ResolvedInputs {
  RunTables tables;
  std::vector<std::string> warnings;
};

/// Randomize draws fresh tables and ignores `provided`. FromInputs validates
/// and returns the provided tables; it throws MissingInputs when any table is
/// absent and warns when per-run randomization is off.
ResolvedInputs resolve_inputs(const RunMode& mode, const ProvidedTables& provided,
                              std::uint64_t seed, const RandomRanges& ranges = {});

struct NextRun {
  std::uint64_t seed;
  RunTables tables;
};

/// Configuration for the run after one that used `seed`. With
/// randomize_each_run the seed advances by one and, in MODE 1, the tables are
/// re-drawn; otherwise everything is kept.
NextRun post_run_hook(const RunMode& mode, std::uint64_t seed, const RunTables& current,
                      const RandomRanges& ranges = {});

}  // namespace manipsim
