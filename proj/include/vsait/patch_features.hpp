#pragma once

#include <cstddef>
#include <vector>

#include "vsait/feature_maps.hpp"

namespace vsait {

using FeatureVector = std::vector<double>;

// Per-layer patch side lengths plus a shared dilation. With dilation d a patch
// of side s samples s x s locations spaced d apart; the d x d interleaved
// patches inside each (s*d) x (s*d) block tile the layer without overlap.
struct PatchSpec {
  std::vector<std::size_t> sides;
  std::size_t dilation = 1;
};

struct PatchFeatureSet {
  std::vector<FeatureVector> patches;  // row-major over the grid
  std::size_t m = 0;                   // shared vector length
  std::size_t grid_rows = 0;
  std::size_t grid_cols = 0;
  std::vector<std::size_t> block_lengths;  // side^2 * channels per layer

  [[nodiscard]] std::size_t patch_count() const noexcept { return patches.size(); }
};

// Expected vector length: sum over layers of side^2 * channels.
std::size_t patch_vector_length(const FeatureMapSet& fm, const PatchSpec& spec);

// Throws invalid-argument when a patch does not fit its layer, config when the
// side count differs from the layer count or the grids do not align (the
// message names the offending layer).
PatchFeatureSet assemble_patches(const FeatureMapSet& fm, const PatchSpec& spec);

enum class NormScope { kVector, kPerLayer };

// kPerLayer rescales each layer block to unit norm (zero blocks stay zero);
// kVector leaves the set alone because projection normalizes whole vectors.
void normalize_blocks(PatchFeatureSet& set, NormScope scope);

}  // namespace vsait
