#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "vsait/hypervector.hpp"
#include "vsait/lsh.hpp"
#include "vsait/rng.hpp"

namespace vsait {

// One mapping hypervector per patch position. Binding with it unbinds the
// source attributes and binds the target ones; the same vector maps back.
class HypervectorMapping {
 public:
  explicit HypervectorMapping(std::vector<Hypervector> per_patch);

  [[nodiscard]] std::size_t dim() const noexcept { return per_patch_.front().dim(); }
  [[nodiscard]] std::size_t patch_count() const noexcept { return per_patch_.size(); }
  [[nodiscard]] const std::vector<Hypervector>& per_patch() const noexcept { return per_patch_; }
  [[nodiscard]] const Hypervector& operator[](std::size_t i) const { return per_patch_[i]; }

  friend bool operator==(const HypervectorMapping&, const HypervectorMapping&) = default;

 private:
  std::vector<Hypervector> per_patch_;
};

// out[i] = bind(vs[i], u[i]).
std::vector<Hypervector> apply_mapping(std::span<const Hypervector> vs, const HypervectorMapping& u);

using AttributePair = std::pair<Hypervector, Hypervector>;

// Raw-sum bundle of bind(src_attr, tgt_attr) over all pairs.
Hypervector build_ground_truth_mapping(std::span<const AttributePair> pairs);

// Closed-form stand-in for a learned mapper: u[i] = bind(src[i], tgt[i]).
HypervectorMapping estimate_mapping_paired(std::span<const Hypervector> src,
                                           std::span<const Hypervector> tgt,
                                           Quantize quantize = Quantize::kNone);

// Independent bipolar vectors per patch (the random-mapping ablation).
HypervectorMapping random_mapping(std::size_t patch_count, std::size_t dim, Seed seed);

}  // namespace vsait
