#pragma once

#include <cstdint>
#include <random>

namespace crowdsim {

/// Seeded stream used by a single run. Every consumer goes through
/// `uniform01`, so draw counts are observable and the mapping from engine
/// bits to doubles does not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Uniform on [0,1) with 53 bits of resolution.
  double uniform01() {
    ++draws_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t draws() const noexcept { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace crowdsim
