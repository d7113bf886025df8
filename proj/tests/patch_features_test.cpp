#include "vsait/patch_features.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.hpp"

namespace vsait {
namespace {

using testing::code_of;

// Value encodes its coordinates so tests can check which locations were sampled.
FeatureLayer coded_layer(std::string name, std::uint32_t h, std::uint32_t w, std::uint32_t c,
                         float tag = 0.0F) {
  FeatureLayer layer{std::move(name), h, w, c, {}};
  for (std::uint32_t r = 0; r < h; ++r) {
    for (std::uint32_t col = 0; col < w; ++col) {
      for (std::uint32_t ch = 0; ch < c; ++ch) {
        layer.data.push_back(tag + static_cast<float>(r * 10000 + col * 100 + ch));
      }
    }
  }
  return layer;
}

TEST(AssemblePatchesTest, WholeMapPatch) {
  const FeatureMapSet fm{{coded_layer("a", 4, 4, 2)}};
  const PatchFeatureSet set = assemble_patches(fm, {{4}, 1});
  ASSERT_EQ(set.patch_count(), 1U);
  EXPECT_EQ(set.m, 32U);
  // Row-major (row, column, channel).
  std::vector<double> expected(fm.layers[0].data.begin(), fm.layers[0].data.end());
  EXPECT_EQ(set.patches[0], expected);
}

TEST(AssemblePatchesTest, MultiScaleConcatenation) {
  const FeatureMapSet fm{{coded_layer("conv3", 16, 16, 8), coded_layer("conv4", 8, 8, 16, 0.5F)}};
  const PatchSpec spec{{16, 8}, 1};
  const PatchFeatureSet set = assemble_patches(fm, spec);
  ASSERT_EQ(set.patch_count(), 1U);
  EXPECT_EQ(set.m, 16U * 16 * 8 + 8U * 8 * 16);
  EXPECT_EQ(set.m, 3072U);
  EXPECT_EQ(set.m, patch_vector_length(fm, spec));
  EXPECT_EQ(set.block_lengths, (std::vector<std::size_t>{2048, 1024}));
  // Second block starts with layer two's (0,0,0).
  EXPECT_EQ(set.patches[0][2048], 0.5);
}

TEST(AssemblePatchesTest, TilingCountAndOrder) {
  const FeatureMapSet fm{{coded_layer("a", 8, 8, 1)}};
  const PatchFeatureSet set = assemble_patches(fm, {{2}, 1});
  ASSERT_EQ(set.patch_count(), 16U);
  EXPECT_EQ(set.grid_rows, 4U);
  EXPECT_EQ(set.grid_cols, 4U);
  for (const auto& p : set.patches) EXPECT_EQ(p.size(), 4U);
  // Patch (1, 2) covers rows 2-3, cols 4-5.
  EXPECT_EQ(set.patches[1 * 4 + 2],
            (std::vector<double>{20400, 20500, 30400, 30500}));
}

TEST(AssemblePatchesTest, DilatedPatchesInterleave) {
  const FeatureMapSet fm{{coded_layer("a", 6, 6, 1)}};
  const PatchFeatureSet set = assemble_patches(fm, {{2}, 3});
  ASSERT_EQ(set.grid_rows, 3U);
  ASSERT_EQ(set.patch_count(), 9U);
  // Cell (0,0) samples rows/cols {0,3}; cell (1,2) samples rows {1,4}, cols {2,5}.
  EXPECT_EQ(set.patches[0], (std::vector<double>{0, 300, 30000, 30300}));
  EXPECT_EQ(set.patches[1 * 3 + 2], (std::vector<double>{10200, 10500, 40200, 40500}));

  // Every location is sampled exactly once.
  std::vector<double> all;
  for (const auto& p : set.patches) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  std::vector<double> expected(fm.layers[0].data.begin(), fm.layers[0].data.end());
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(all, expected);
}

TEST(AssemblePatchesTest, MisalignedGridNamesLayer) {
  const FeatureMapSet fm{{coded_layer("big", 8, 8, 1), coded_layer("small_layer", 4, 4, 1)}};
  try {
    assemble_patches(fm, {{2, 2}, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
    EXPECT_NE(std::string(e.what()).find("small_layer"), std::string::npos);
  }
  // Not tiled by the block size.
  EXPECT_EQ(code_of([&] { assemble_patches(FeatureMapSet{{coded_layer("a", 5, 4, 1)}}, {{2}, 1}); }),
            ErrorCode::kConfig);
  // Wrong number of sides.
  EXPECT_EQ(code_of([&] { assemble_patches(fm, {{2}, 1}); }), ErrorCode::kConfig);
}

TEST(AssemblePatchesTest, PatchLargerThanLayer) {
  const FeatureMapSet fm{{coded_layer("a", 4, 4, 1)}};
  EXPECT_EQ(code_of([&] { assemble_patches(fm, {{5}, 1}); }), ErrorCode::kInvalidArgument);
  // Side 2 with dilation 4 spans 5 locations.
  EXPECT_EQ(code_of([&] { assemble_patches(fm, {{2}, 4}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { assemble_patches(fm, {{0}, 1}); }), ErrorCode::kInvalidArgument);
}

TEST(AssemblePatchesTest, LengthFormulaHoldsAcrossConfigs) {
  for (std::uint32_t grid = 1; grid <= 3; ++grid) {
    for (std::uint32_t d = 1; d <= 2; ++d) {
      const FeatureMapSet fm{{coded_layer("a", 4 * grid * d, 4 * grid * d, 3),
                              coded_layer("b", 2 * grid * d, 2 * grid * d, 5),
                              coded_layer("c", grid * d, grid * d, 2)}};
      const PatchSpec spec{{4, 2, 1}, d};
      const PatchFeatureSet set = assemble_patches(fm, spec);
      EXPECT_EQ(set.patch_count(), static_cast<std::size_t>(grid * d) * grid * d);
      EXPECT_EQ(set.m, 16U * 3 + 4U * 5 + 1U * 2);
      for (const auto& p : set.patches) EXPECT_EQ(p.size(), set.m);
      EXPECT_EQ(assemble_patches(fm, spec).patches, set.patches);
    }
  }
}

TEST(NormalizeBlocksTest, PerLayerScope) {
  PatchFeatureSet set;
  set.m = 4;
  set.block_lengths = {2, 2};
  set.patches = {{3, 4, 0, 0}, {0, 2, 1, 0}};
  PatchFeatureSet untouched = set;
  normalize_blocks(untouched, NormScope::kVector);
  EXPECT_EQ(untouched.patches, set.patches);

  normalize_blocks(set, NormScope::kPerLayer);
  EXPECT_EQ(set.patches[0], (std::vector<double>{0.6, 0.8, 0, 0}));
  EXPECT_EQ(set.patches[1], (std::vector<double>{0, 1, 1, 0}));
}

}  // namespace
}  // namespace vsait
