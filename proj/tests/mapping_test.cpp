#include "vsait/mapping.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "test_util.hpp"

namespace vsait {
namespace {

using testing::code_of;

std::vector<Hypervector> random_list(std::size_t count, std::size_t dim, std::uint64_t base,
                                     SampleMode mode = SampleMode::kBipolar) {
  std::vector<Hypervector> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_hypervector(dim, Seed{base + i}, mode));
  return out;
}

Hypervector sum_of_binds(const std::vector<Hypervector>& a, const std::vector<Hypervector>& b) {
  std::vector<Hypervector> bound;
  for (std::size_t i = 0; i < a.size(); ++i) bound.push_back(bind(a[i], b[i]));
  return bundle(bound);
}

TEST(HypervectorMappingTest, Invariants) {
  EXPECT_EQ(code_of([] { HypervectorMapping({}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] {
              HypervectorMapping({Hypervector::ones(3), Hypervector::ones(4)});
            }),
            ErrorCode::kInvalidArgument);
}

TEST(ApplyMappingTest, OnesIsIdentity) {
  const auto vs = random_list(3, 32, 0, SampleMode::kUniform);
  const HypervectorMapping u(std::vector<Hypervector>(3, Hypervector::ones(32)));
  EXPECT_EQ(apply_mapping(vs, u), vs);
}

TEST(ApplyMappingTest, BipolarMappingIsSelfInverse) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto vs = random_list(5, 128, 100 * s, SampleMode::kUniform);
    const HypervectorMapping u = random_mapping(5, 128, Seed{s});
    ASSERT_EQ(apply_mapping(apply_mapping(vs, u), u), vs);
  }
}

TEST(ApplyMappingTest, Mismatches) {
  const HypervectorMapping u = random_mapping(2, 16, Seed{1});
  EXPECT_EQ(code_of([&] { apply_mapping(random_list(3, 16, 0), u); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { apply_mapping(random_list(2, 8, 0), u); }), ErrorCode::kInvalidArgument);
}

TEST(GroundTruthMappingTest, SinglePairAndOrder) {
  const Hypervector c_src = random_hypervector(64, Seed{1});
  const Hypervector c_tgt = random_hypervector(64, Seed{2});
  const Hypervector p_src = random_hypervector(64, Seed{3});
  const Hypervector p_tgt = random_hypervector(64, Seed{4});
  const std::vector<AttributePair> one{{c_src, c_tgt}};
  EXPECT_EQ(build_ground_truth_mapping(one), bind(c_src, c_tgt));

  const std::vector<AttributePair> forward{{c_src, c_tgt}, {p_src, p_tgt}};
  const std::vector<AttributePair> backward{{p_src, p_tgt}, {c_src, c_tgt}};
  EXPECT_EQ(build_ground_truth_mapping(forward), build_ground_truth_mapping(backward));
  EXPECT_EQ(code_of([] { build_ground_truth_mapping({}); }), ErrorCode::kInvalidArgument);
}

// Scene v_src = sum_j o_j * s_j mapped with u = sum_j s_j * t_j, compared to
// v_tgt = sum_j o_j * t_j. The oracle repeats the experiment with its own RNG.
double library_recovery(std::size_t k, std::size_t dim, std::size_t trials) {
  double sum = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto objects = random_list(k, dim, 1'000'000 * t + 1);
    const auto src = random_list(k, dim, 1'000'000 * t + 1000);
    const auto tgt = random_list(k, dim, 1'000'000 * t + 2000);
    std::vector<AttributePair> pairs;
    for (std::size_t j = 0; j < k; ++j) pairs.emplace_back(src[j], tgt[j]);
    const Hypervector u = build_ground_truth_mapping(pairs);
    const std::vector<Hypervector> v_src{sum_of_binds(objects, src)};
    const auto mapped = apply_mapping(v_src, HypervectorMapping({u}));
    sum += cosine_similarity(mapped[0], sum_of_binds(objects, tgt));
  }
  return sum / static_cast<double>(trials);
}

TEST(GroundTruthMappingTest, TwoPairSceneRecovery) {
  const oracle::Stats expected = oracle::scene_recovery(2, 4096, 100, 5);
  ASSERT_NEAR(expected.mean, 1.0 / std::sqrt(2.0), 0.05);
  EXPECT_NEAR(library_recovery(2, 4096, 50), expected.mean, 0.05);
}

TEST(GroundTruthMappingTest, FourPairSceneRecovery) {
  const oracle::Stats expected = oracle::scene_recovery(4, 4096, 100, 6);
  ASSERT_NEAR(expected.mean, 0.5, 0.02);
  EXPECT_NEAR(library_recovery(4, 4096, 50), expected.mean, 0.02);
}

TEST(GroundTruthMappingTest, UnrelatedMappingGivesNoise) {
  constexpr std::size_t kDim = 4096;
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto objects = random_list(2, kDim, 100 * t);
    const auto src = random_list(2, kDim, 100 * t + 10);
    const auto tgt = random_list(2, kDim, 100 * t + 20);
    const auto other_src = random_list(2, kDim, 100 * t + 30);
    const auto other_tgt = random_list(2, kDim, 100 * t + 40);
    const Hypervector u = sum_of_binds(other_src, other_tgt);
    const double c = cosine_similarity(bind(sum_of_binds(objects, src), u), sum_of_binds(objects, tgt));
    EXPECT_LT(std::abs(c), 5.0 / std::sqrt(static_cast<double>(kDim)));
  }
}

TEST(EstimateMappingPairedTest, BipolarRecoversTargetExactly) {
  const auto src = random_list(6, 256, 0);
  const auto tgt = random_list(6, 256, 50);
  const HypervectorMapping u = estimate_mapping_paired(src, tgt);
  EXPECT_EQ(apply_mapping(src, u), tgt);
  EXPECT_EQ(apply_mapping(tgt, u), src);
  EXPECT_EQ(estimate_mapping_paired(src, tgt, Quantize::kSign), u);
}

TEST(EstimateMappingPairedTest, IdenticalInputsGiveOnes) {
  const auto src = random_list(3, 64, 7);
  const HypervectorMapping u = estimate_mapping_paired(src, src);
  for (const Hypervector& v : u.per_patch()) EXPECT_EQ(v, Hypervector::ones(64));
}

TEST(EstimateMappingPairedTest, Mismatches) {
  EXPECT_EQ(code_of([] { estimate_mapping_paired(random_list(2, 8, 0), random_list(3, 8, 0)); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { estimate_mapping_paired(random_list(2, 8, 0), random_list(2, 4, 0)); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { estimate_mapping_paired({}, {}); }), ErrorCode::kInvalidArgument);
}

TEST(EstimateMappingPairedTest, ContinuousLshVectorsMoveTowardTarget) {
  constexpr std::size_t kM = 512;
  constexpr std::size_t kPatches = 200;
  const LshProjector p(kM, 4096, Seed{31});
  Rng rng(Seed{32});
  std::vector<Hypervector> src;
  std::vector<Hypervector> tgt;
  for (std::size_t i = 0; i < kPatches; ++i) {
    std::vector<double> fs(kM);
    std::vector<double> ft(kM);
    for (double& x : fs) x = rng.normal();
    for (double& x : ft) x = rng.normal();
    src.push_back(project(p, fs));
    tgt.push_back(project(p, ft));
  }
  const HypervectorMapping u = estimate_mapping_paired(src, tgt);
  const auto mapped = apply_mapping(src, u);
  std::size_t improved = 0;
  for (std::size_t i = 0; i < kPatches; ++i) {
    improved += cosine_similarity(mapped[i], tgt[i]) > cosine_similarity(src[i], tgt[i]) ? 1 : 0;
  }
  EXPECT_GE(improved, kPatches * 95 / 100);
  // Not exact: continuous entries do not cancel under binding.
  EXPECT_NE(mapped, tgt);
}

TEST(RandomMappingTest, DeterministicBipolarAndNearOrthogonal) {
  const HypervectorMapping a = random_mapping(4, 4096, Seed{9});
  EXPECT_EQ(a, random_mapping(4, 4096, Seed{9}));
  EXPECT_FALSE(a == random_mapping(4, 4096, Seed{10}));
  for (const Hypervector& v : a.per_patch()) EXPECT_TRUE(v.bipolar());
  EXPECT_EQ(code_of([] { random_mapping(0, 4, Seed{1}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { random_mapping(4, 0, Seed{1}); }), ErrorCode::kInvalidArgument);

  const auto v = random_list(4, 4096, 500);
  const auto v_tgt = random_list(4, 4096, 600);
  const auto mapped = apply_mapping(v, a);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(std::abs(cosine_similarity(mapped[i], v_tgt[i])), 0.1);
}

}  // namespace
}  // namespace vsait
