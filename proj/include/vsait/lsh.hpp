#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vsait/hypervector.hpp"
#include "vsait/patch_features.hpp"
#include "vsait/rng.hpp"

namespace vsait {

inline constexpr std::size_t kDefaultHypervectorDim = 4096;

enum class Quantize { kNone, kSign };

// Random projection from feature space (length m) into the hyperspace
// (length n). Rows are standard-normal draws normalized to unit length, so
// projecting a unit feature vector yields entries in [-1, 1].
class LshProjector {
 public:
  LshProjector(std::size_t m, std::size_t n, Seed seed);

  [[nodiscard]] std::size_t input_dim() const noexcept { return m_; }
  [[nodiscard]] std::size_t output_dim() const noexcept { return n_; }
  [[nodiscard]] Seed seed() const noexcept { return seed_; }
  [[nodiscard]] std::span<const double> row(std::size_t r) const {
    return std::span<const double>(rows_).subspan(r * m_, m_);
  }

  friend bool operator==(const LshProjector&, const LshProjector&) = default;

 private:
  std::size_t m_;
  std::size_t n_;
  Seed seed_;
  std::vector<double> rows_;  // n x m, row-major
};

// Normalizes f, projects it, and optionally maps entries to {-1, +1}
// (sign(0) -> +1). Throws invalid-argument on a length mismatch and
// degenerate-input on a zero vector.
Hypervector project(const LshProjector& p, std::span<const double> f,
                    Quantize quantize = Quantize::kNone);

// Order-preserving project() over every patch; bitwise identical for any
// thread count (0 = hardware). Errors name the failing patch index.
std::vector<Hypervector> project_batch(const LshProjector& p, const PatchFeatureSet& fs,
                                       Quantize quantize = Quantize::kNone,
                                       std::size_t threads = 1);

}  // namespace vsait
