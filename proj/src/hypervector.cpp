#include "vsait/hypervector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vsait/error.hpp"

namespace vsait {

namespace {

void require_same_dim(const Hypervector& a, const Hypervector& b, const char* op) {
  require(a.dim() == b.dim(), ErrorCode::kInvalidArgument,
          std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
              std::to_string(b.dim()) + ")");
}

}  // namespace

Hypervector::Hypervector(std::vector<double> values) : values_(std::move(values)) {
  require(!values_.empty(), ErrorCode::kInvalidArgument, "hypervector dimension must be >= 1");
  require(std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); }),
          ErrorCode::kInvalidArgument, "hypervector entries must be finite");
}

Hypervector Hypervector::ones(std::size_t dim) {
  return Hypervector(std::vector<double>(dim, 1.0));
}

bool Hypervector::bounded() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](double x) { return x >= -1.0 && x <= 1.0; });
}

bool Hypervector::bipolar() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](double x) { return x == 1.0 || x == -1.0; });
}

double Hypervector::norm() const noexcept {
  double sum = 0.0;
  for (double x : values_) sum += x * x;
  return std::sqrt(sum);
}

Hypervector random_hypervector(std::size_t dim, Seed seed, SampleMode mode) {
  require(dim >= 1, ErrorCode::kInvalidArgument, "random_hypervector: dim must be >= 1");
  Rng rng(seed);
  std::vector<double> values(dim);
  if (mode == SampleMode::kBipolar) {
    // One engine draw supplies 64 signs.
    for (std::size_t i = 0; i < dim; i += 64) {
      std::uint64_t bits = rng.next_u64();
      const std::size_t end = std::min(dim, i + 64);
      for (std::size_t j = i; j < end; ++j, bits >>= 1) {
        values[j] = (bits & 1U) != 0 ? 1.0 : -1.0;
      }
    }
  } else {
    for (double& x : values) x = rng.uniform(-1.0, 1.0);
  }
  return Hypervector(std::move(values));
}

Hypervector bind(const Hypervector& a, const Hypervector& b) {
  require_same_dim(a, b, "bind");
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
  return Hypervector(std::move(out));
}

Hypervector bundle(std::span<const Hypervector> vs, BundleNorm norm) {
  require(!vs.empty(), ErrorCode::kInvalidArgument, "bundle: empty list");
  const std::size_t dim = vs.front().dim();
  std::vector<double> sum(dim, 0.0);
  for (const Hypervector& v : vs) {
    require_same_dim(vs.front(), v, "bundle");
    for (std::size_t i = 0; i < dim; ++i) sum[i] += v[i];
  }
  switch (norm) {
    case BundleNorm::kRawSum:
      break;
    case BundleNorm::kMean:
      for (double& x : sum) x /= static_cast<double>(vs.size());
      break;
    case BundleNorm::kClipUnit:
      for (double& x : sum) x = std::clamp(x, -1.0, 1.0);
      break;
  }
  return Hypervector(std::move(sum));
}

double dot(const Hypervector& a, const Hypervector& b) {
  require_same_dim(a, b, "dot");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) sum += a[i] * b[i];
  return sum;
}

double cosine_similarity(const Hypervector& a, const Hypervector& b) {
  require_same_dim(a, b, "cosine_similarity");
  const double na2 = dot(a, a);
  const double nb2 = dot(b, b);
  require(na2 > 0.0 && nb2 > 0.0, ErrorCode::kDegenerateInput,
          "cosine_similarity: zero-norm hypervector");
  // A single square root keeps integer-valued (bipolar) cases exact.
  return std::clamp(dot(a, b) / std::sqrt(na2 * nb2), -1.0, 1.0);
}

double cosine_distance(const Hypervector& a, const Hypervector& b) {
  return 1.0 - cosine_similarity(a, b);
}

Hypervector scaled(const Hypervector& v, double factor) {
  std::vector<double> out(v.values().begin(), v.values().end());
  for (double& x : out) x *= factor;
  return Hypervector(std::move(out));
}

}  // namespace vsait
