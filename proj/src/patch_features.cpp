#include "vsait/patch_features.hpp"

#include <cmath>
#include <string>

#include "vsait/error.hpp"

namespace vsait {

namespace {

struct LayerGrid {
  std::size_t rows;
  std::size_t cols;
};

LayerGrid layer_grid(const FeatureLayer& layer, std::size_t side, std::size_t dilation) {
  require(side >= 1, ErrorCode::kInvalidArgument,
          "layer '" + layer.name + "': patch side must be >= 1");
  const std::size_t footprint = (side - 1) * dilation + 1;
  require(footprint <= layer.height && footprint <= layer.width, ErrorCode::kInvalidArgument,
          "layer '" + layer.name + "': patch of side " + std::to_string(side) + " (dilation " +
              std::to_string(dilation) + ") exceeds the " + std::to_string(layer.height) + "x" +
              std::to_string(layer.width) + " map");
  const std::size_t block = side * dilation;
  require(layer.height % block == 0 && layer.width % block == 0, ErrorCode::kConfig,
          "layer '" + layer.name + "': " + std::to_string(layer.height) + "x" +
              std::to_string(layer.width) + " is not tiled by blocks of " + std::to_string(block));
  return {layer.height / side, layer.width / side};
}

// First sampled row/column of grid cell `index` along one axis.
std::size_t cell_origin(std::size_t index, std::size_t side, std::size_t dilation) {
  return (index / dilation) * side * dilation + index % dilation;
}

}  // namespace

std::size_t patch_vector_length(const FeatureMapSet& fm, const PatchSpec& spec) {
  require(spec.sides.size() == fm.layers.size(), ErrorCode::kConfig,
          "patch spec lists " + std::to_string(spec.sides.size()) + " sides for " +
              std::to_string(fm.layers.size()) + " layers");
  std::size_t m = 0;
  for (std::size_t l = 0; l < fm.layers.size(); ++l) {
    m += spec.sides[l] * spec.sides[l] * fm.layers[l].channels;
  }
  return m;
}

PatchFeatureSet assemble_patches(const FeatureMapSet& fm, const PatchSpec& spec) {
  fm.validate();
  require(!fm.layers.empty(), ErrorCode::kInvalidArgument, "feature map set has no layers");
  require(spec.dilation >= 1, ErrorCode::kInvalidArgument, "dilation must be >= 1");
  const std::size_t m = patch_vector_length(fm, spec);

  std::vector<LayerGrid> grids;
  for (std::size_t l = 0; l < fm.layers.size(); ++l) {
    grids.push_back(layer_grid(fm.layers[l], spec.sides[l], spec.dilation));
    require(grids[l].rows == grids.front().rows && grids[l].cols == grids.front().cols,
            ErrorCode::kConfig,
            "layer '" + fm.layers[l].name + "': patch grid " + std::to_string(grids[l].rows) +
                "x" + std::to_string(grids[l].cols) + " does not align with layer '" +
                fm.layers.front().name + "' grid " + std::to_string(grids.front().rows) + "x" +
                std::to_string(grids.front().cols));
  }

  PatchFeatureSet set;
  set.m = m;
  set.grid_rows = grids.front().rows;
  set.grid_cols = grids.front().cols;
  for (std::size_t l = 0; l < fm.layers.size(); ++l) {
    set.block_lengths.push_back(spec.sides[l] * spec.sides[l] * fm.layers[l].channels);
  }

  const std::size_t d = spec.dilation;
  set.patches.reserve(set.grid_rows * set.grid_cols);
  for (std::size_t gr = 0; gr < set.grid_rows; ++gr) {
    for (std::size_t gc = 0; gc < set.grid_cols; ++gc) {
      FeatureVector v;
      v.reserve(m);
      for (std::size_t l = 0; l < fm.layers.size(); ++l) {
        const FeatureLayer& layer = fm.layers[l];
        const std::size_t side = spec.sides[l];
        const std::size_t row0 = cell_origin(gr, side, d);
        const std::size_t col0 = cell_origin(gc, side, d);
        for (std::size_t i = 0; i < side; ++i) {
          for (std::size_t j = 0; j < side; ++j) {
            for (std::size_t c = 0; c < layer.channels; ++c) {
              v.push_back(layer.at(row0 + i * d, col0 + j * d, c));
            }
          }
        }
      }
      set.patches.push_back(std::move(v));
    }
  }
  return set;
}

void normalize_blocks(PatchFeatureSet& set, NormScope scope) {
  if (scope == NormScope::kVector) return;
  for (FeatureVector& v : set.patches) {
    std::size_t offset = 0;
    for (std::size_t len : set.block_lengths) {
      double sum = 0.0;
      for (std::size_t i = offset; i < offset + len; ++i) sum += v[i] * v[i];
      if (sum > 0.0) {
        const double norm = std::sqrt(sum);
        for (std::size_t i = offset; i < offset + len; ++i) v[i] /= norm;
      }
      offset += len;
    }
  }
}

}  // namespace vsait
