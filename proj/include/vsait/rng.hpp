#pragma once

#include <compare>
#include <cstdint>
#include <random>

namespace vsait {

struct Seed {
  std::uint64_t value = 0;

  friend auto operator<=>(const Seed&, const Seed&) = default;
};

// Derives an independent stream seed from a base seed (splitmix64 finalizer).
// Used for per-trial and per-symbol seeds so results never depend on scheduling.
Seed derive_seed(Seed base, std::uint64_t stream) noexcept;

// The single generator used everywhere in the library. Distributions are
// implemented here rather than taken from <random> so the produced bits do
// not depend on the standard library vendor.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed.value) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller; the second variate is cached.
  double normal();

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace vsait
