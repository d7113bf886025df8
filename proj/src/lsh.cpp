#include "vsait/lsh.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "vsait/error.hpp"
#include "vsait/parallel.hpp"

namespace vsait {

LshProjector::LshProjector(std::size_t m, std::size_t n, Seed seed) : m_(m), n_(n), seed_(seed) {
  require(m >= 1 && n >= 1, ErrorCode::kInvalidArgument,
          "LshProjector: feature and hypervector dims must be >= 1");
  rows_.resize(m * n);
  Rng rng(seed);
  for (std::size_t r = 0; r < n; ++r) {
    auto row = std::span<double>(rows_).subspan(r * m, m);
    double sum = 0.0;
    do {
      sum = 0.0;
      for (double& x : row) {
        x = rng.normal();
        sum += x * x;
      }
    } while (sum == 0.0);
    const double inv = 1.0 / std::sqrt(sum);
    for (double& x : row) x *= inv;
  }
}

Hypervector project(const LshProjector& p, std::span<const double> f, Quantize quantize) {
  require(f.size() == p.input_dim(), ErrorCode::kInvalidArgument,
          "project: feature length " + std::to_string(f.size()) + " does not match projector m=" +
              std::to_string(p.input_dim()));
  double sum = 0.0;
  for (double x : f) {
    require(std::isfinite(x), ErrorCode::kInvalidArgument, "project: non-finite feature value");
    sum += x * x;
  }
  require(sum > 0.0, ErrorCode::kDegenerateInput, "project: zero feature vector");
  const double inv = 1.0 / std::sqrt(sum);

  std::vector<double> out(p.output_dim());
  for (std::size_t r = 0; r < out.size(); ++r) {
    const auto row = p.row(r);
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += row[i] * f[i];
    // Dot of two unit vectors; clamp absorbs rounding past the boundary.
    double value = std::clamp(acc * inv, -1.0, 1.0);
    if (quantize == Quantize::kSign) value = value < 0.0 ? -1.0 : 1.0;
    out[r] = value;
  }
  return Hypervector(std::move(out));
}

std::vector<Hypervector> project_batch(const LshProjector& p, const PatchFeatureSet& fs,
                                       Quantize quantize, std::size_t threads) {
  std::vector<std::optional<Hypervector>> slots(fs.patches.size());
  parallel_for(fs.patches.size(), threads, [&](std::size_t i) {
    try {
      slots[i].emplace(project(p, fs.patches[i], quantize));
    } catch (const Error& e) {
      throw Error(e.code(), "patch " + std::to_string(i) + ": " + e.what());
    }
  });
  std::vector<Hypervector> out;
  out.reserve(slots.size());
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

}  // namespace vsait
