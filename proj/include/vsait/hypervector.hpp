#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vsait/rng.hpp"

namespace vsait {

// Dense real hypervector. Sampled and LSH-produced vectors live in [-1, 1]^dim;
// bundles may leave that range, which bounded() reports.
class Hypervector {
 public:
  // Throws invalid-argument for an empty or non-finite input.
  explicit Hypervector(std::vector<double> values);

  static Hypervector ones(std::size_t dim);

  [[nodiscard]] std::size_t dim() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

  // All entries in [-1, 1].
  [[nodiscard]] bool bounded() const noexcept;
  // All entries exactly -1 or +1.
  [[nodiscard]] bool bipolar() const noexcept;

  [[nodiscard]] double norm() const noexcept;

  friend bool operator==(const Hypervector&, const Hypervector&) = default;

 private:
  std::vector<double> values_;
};

enum class SampleMode { kBipolar, kUniform };
enum class BundleNorm { kRawSum, kMean, kClipUnit };

Hypervector random_hypervector(std::size_t dim, Seed seed, SampleMode mode = SampleMode::kBipolar);

// Elementwise product (MAP binding). Exactly self-inverse when one side is bipolar.
Hypervector bind(const Hypervector& a, const Hypervector& b);

// Elementwise superposition (MAP bundling).
Hypervector bundle(std::span<const Hypervector> vs, BundleNorm norm = BundleNorm::kRawSum);

double dot(const Hypervector& a, const Hypervector& b);

// Throws degenerate-input when either argument has zero norm.
double cosine_similarity(const Hypervector& a, const Hypervector& b);
double cosine_distance(const Hypervector& a, const Hypervector& b);

Hypervector scaled(const Hypervector& v, double factor);

}  // namespace vsait
