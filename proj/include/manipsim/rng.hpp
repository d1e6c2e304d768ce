#pragma once

#include <array>
#include <cstdint>

namespace manipsim {

/// Identifier written into manifests so datasets can be regenerated elsewhere.
inline constexpr const char* kPrngId = "xoshiro256**/splitmix64";

/// SplitMix64 step. Used for seeding and for deriving per-stream keys.
std::uint64_t splitmix64(std::uint64_t& state);

/// Folds several integers into one well-mixed 64-bit key.
std::uint64_t mix_key(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0);

/// xoshiro256** 1.0, seeded by expanding a 64-bit seed through SplitMix64.
///
/// The engine is spelled out here instead of using <random> because the
/// standard distributions are implementation-defined and datasets must be
/// reproducible from their manifest seed on any toolchain.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed);
  static Xoshiro256 from_state(const std::array<std::uint64_t, 4>& s);

  std::uint64_t next();
  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform double in [lo, hi].
  double uniform(double lo, double hi);
  /// Index drawn uniformly from [0, n).
  std::size_t index(std::size_t n);
  /// Standard normal deviate (Box-Muller, cached second value).
  double normal();

 private:
  Xoshiro256() = default;
  std::array<std::uint64_t, 4> s_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace manipsim
