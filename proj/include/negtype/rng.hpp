#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace negtype {

/// Seeded generator with platform-independent draws. std::mt19937_64 output
/// is fully specified by the standard; the distributions in <random> are not,
/// so uniform draws are derived from the raw bits here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

  /// Standard normal via Box-Muller.
  double normal();

  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace negtype
