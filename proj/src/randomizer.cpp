#include "manipsim/randomizer.hpp"

#include <cmath>

#include "manipsim/errors.hpp"
#include "manipsim/rng.hpp"

namespace manipsim {

namespace {

void check(const Range& r, const char* name) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi)
    throw InvalidRange(std::string("range ") + name + " must satisfy lo <= hi with finite bounds");
}

double draw(Xoshiro256& g, const Range& r) { return g.uniform(r.lo, r.hi); }

LinkType draw_type(Xoshiro256& g, const std::array<double, 3>& w) {
  const double total = w[0] + w[1] + w[2];
  const double u = g.uniform() * total;
  if (u < w[0]) return LinkType::Empty;
  if (u < w[0] + w[1]) return LinkType::Revolute;
  if (w[2] > 0.0) return LinkType::Prismatic;
  return w[1] > 0.0 ? LinkType::Revolute : LinkType::Empty;
}

}  // namespace

void RandomRanges::validate() const {
  check(a, "a");
  check(d, "d");
  check(revolute_amplitude, "revolute_amplitude");
  check(prismatic_amplitude, "prismatic_amplitude");
  check(frequency, "frequency");
  check(phase, "phase");
  check(bias, "bias");
  check(base_translation_amplitude, "base_translation_amplitude");
  check(base_rotation_amplitude, "base_rotation_amplitude");
  if (a.lo < 0.0 || d.lo < 0.0) throw InvalidRange("lengths a and d must be nonnegative");
  if (frequency.lo < 0.0) throw InvalidRange("frequency must be nonnegative");
  if (angle_choices.empty()) throw InvalidRange("angle_choices must not be empty");
  for (double x : angle_choices)
    if (!std::isfinite(x)) throw InvalidRange("angle_choices must be finite");
  double sum = 0.0;
  for (double w : link_type_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidRange("link type weights must be >= 0");
    sum += w;
  }
  if (!(sum > 0.0)) throw InvalidRange("link type weights must have a positive sum");
}

RunTables randomize_config(std::uint64_t seed, const RandomRanges& ranges) {
  ranges.validate();
  Xoshiro256 g(seed);
  RunTables out;

  // Draw order is part of the reproducibility contract: DH rows 1-8 (alpha,
  // a, theta, d, type), joint rows 1-8, then base rows 1-2.
  for (auto& row : out.dh.rows) {
    row.alpha = ranges.angle_choices[g.index(ranges.angle_choices.size())];
    row.a = draw(g, ranges.a);
    row.theta = ranges.angle_choices[g.index(ranges.angle_choices.size())];
    row.d = draw(g, ranges.d);
    row.link_type = draw_type(g, ranges.link_type_weights);
  }
  for (auto& row : out.joints.rows) {
    row.amplitude = draw(g, ranges.revolute_amplitude);
    row.prismatic_amplitude = draw(g, ranges.prismatic_amplitude);
    row.bias = draw(g, ranges.bias);
    row.frequency = draw(g, ranges.frequency);
    row.phase = draw(g, ranges.phase);
  }
  out.base.rows.assign(2, {});
  for (std::size_t i = 0; i < 2; ++i) {
    auto& row = out.base.rows[i];
    row.amplitude = draw(g, i == 0 ? ranges.base_translation_amplitude
                                   : ranges.base_rotation_amplitude);
    row.bias = draw(g, ranges.bias);
    row.frequency = draw(g, ranges.frequency);
    row.phase = draw(g, ranges.phase);
  }
  return out;
}

ResolvedInputs resolve_inputs(const RunMode& mode, const ProvidedTables& provided,
                              std::uint64_t seed, const RandomRanges& ranges) {
  ResolvedInputs out;
  if (mode.mode == Mode::Randomize) {
    out.tables = randomize_config(seed, ranges);
    return out;
  }
  std::string missing;
  if (!provided.dh) missing += " DH";
  if (!provided.joints) missing += " joint-oscillation";
  if (!provided.base) missing += " base-oscillation";
  if (!missing.empty())
    throw MissingInputs("MODE 2 needs all three input tables; missing:" + missing);
  out.tables.dh = parse_dh_table(*provided.dh);
  out.tables.joints = parse_joint_table(*provided.joints);
  out.tables.base = parse_base_table(*provided.base);
  if (!mode.randomize_each_run)
    out.warnings.push_back("randomization is turned off; using the provided input tables");
  return out;
}

NextRun post_run_hook(const RunMode& mode, std::uint64_t seed, const RunTables& current,
                      const RandomRanges& ranges) {
  if (!mode.randomize_each_run) return {seed, current};
  const std::uint64_t next = seed + 1;
  if (mode.mode == Mode::Randomize) return {next, randomize_config(next, ranges)};
  return {next, current};
}

}  // namespace manipsim
