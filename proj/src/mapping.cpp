#include "vsait/mapping.hpp"

#include <string>

#include "vsait/error.hpp"

namespace vsait {

namespace {

Hypervector sign_quantized(const Hypervector& v) {
  std::vector<double> out(v.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = v[i] < 0.0 ? -1.0 : 1.0;
  return Hypervector(std::move(out));
}

}  // namespace

HypervectorMapping::HypervectorMapping(std::vector<Hypervector> per_patch)
    : per_patch_(std::move(per_patch)) {
  require(!per_patch_.empty(), ErrorCode::kInvalidArgument, "mapping needs at least one patch");
  for (const Hypervector& u : per_patch_) {
    require(u.dim() == per_patch_.front().dim(), ErrorCode::kInvalidArgument,
            "mapping hypervectors must share one dim");
  }
}

std::vector<Hypervector> apply_mapping(std::span<const Hypervector> vs, const HypervectorMapping& u) {
  require(vs.size() == u.patch_count(), ErrorCode::kInvalidArgument,
          "apply_mapping: " + std::to_string(vs.size()) + " hypervectors for a mapping of " +
              std::to_string(u.patch_count()) + " patches");
  std::vector<Hypervector> out;
  out.reserve(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) out.push_back(bind(vs[i], u[i]));
  return out;
}

Hypervector build_ground_truth_mapping(std::span<const AttributePair> pairs) {
  require(!pairs.empty(), ErrorCode::kInvalidArgument, "ground-truth mapping needs >= 1 pair");
  std::vector<Hypervector> bound;
  bound.reserve(pairs.size());
  for (const auto& [src, tgt] : pairs) bound.push_back(bind(src, tgt));
  return bundle(bound, BundleNorm::kRawSum);
}

HypervectorMapping estimate_mapping_paired(std::span<const Hypervector> src,
                                           std::span<const Hypervector> tgt, Quantize quantize) {
  require(src.size() == tgt.size(), ErrorCode::kInvalidArgument,
          "estimate_mapping_paired: source and target patch counts differ");
  require(!src.empty(), ErrorCode::kInvalidArgument, "estimate_mapping_paired: no patches");
  std::vector<Hypervector> per_patch;
  per_patch.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    Hypervector u = bind(src[i], tgt[i]);
    per_patch.push_back(quantize == Quantize::kSign ? sign_quantized(u) : std::move(u));
  }
  return HypervectorMapping(std::move(per_patch));
}

HypervectorMapping random_mapping(std::size_t patch_count, std::size_t dim, Seed seed) {
  require(patch_count >= 1 && dim >= 1, ErrorCode::kInvalidArgument,
          "random_mapping: counts must be >= 1");
  std::vector<Hypervector> per_patch;
  per_patch.reserve(patch_count);
  for (std::size_t i = 0; i < patch_count; ++i) {
    per_patch.push_back(random_hypervector(dim, derive_seed(seed, i), SampleMode::kBipolar));
  }
  return HypervectorMapping(std::move(per_patch));
}

}  // namespace vsait
