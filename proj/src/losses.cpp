#include "vsait/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vsait/error.hpp"

namespace vsait {

namespace {

template <typename F>
double mean_of(const ScoreBatch& batch, F f) {
  double sum = 0.0;
  for (double s : batch.scores()) sum += f(s);
  return sum / static_cast<double>(batch.size());
}

void require_probabilities(const ScoreBatch& batch, const char* name) {
  for (double s : batch.scores()) {
    require(s > 0.0 && s < 1.0, ErrorCode::kInvalidArgument,
            std::string("nll loss: ") + name + " score " + std::to_string(s) + " outside (0, 1)");
  }
}

}  // namespace

ScoreBatch::ScoreBatch(std::vector<double> scores) : scores_(std::move(scores)) {
  require(!scores_.empty(), ErrorCode::kInvalidArgument, "score batch is empty");
  require(std::all_of(scores_.begin(), scores_.end(), [](double s) { return std::isfinite(s); }),
          ErrorCode::kInvalidArgument, "score batch has a non-finite entry");
}

void LossConfig::validate() const {
  require(std::isfinite(lambda) && lambda >= 0.0, ErrorCode::kInvalidArgument,
          "lambda must be finite and >= 0");
  require(std::isfinite(translated_weight) && translated_weight >= 0.0 &&
              std::isfinite(mapped_weight) && mapped_weight >= 0.0,
          ErrorCode::kInvalidArgument, "loss term weights must be finite and >= 0");
}

double vsa_cyclic_loss(std::span<const Hypervector> v_x, std::span<const Hypervector> v_cycled) {
  require(!v_x.empty(), ErrorCode::kInvalidArgument, "vsa_cyclic_loss: no patches");
  require(v_x.size() == v_cycled.size(), ErrorCode::kInvalidArgument,
          "vsa_cyclic_loss: " + std::to_string(v_x.size()) + " source patches vs " +
              std::to_string(v_cycled.size()) + " cycled patches");

  std::string zero_patches;
  for (std::size_t i = 0; i < v_x.size(); ++i) {
    require(v_x[i].dim() == v_cycled[i].dim(), ErrorCode::kInvalidArgument,
            "vsa_cyclic_loss: dim mismatch at patch " + std::to_string(i));
    if (v_x[i].norm() == 0.0 || v_cycled[i].norm() == 0.0) {
      zero_patches += (zero_patches.empty() ? "" : ",") + std::to_string(i);
    }
  }
  require(zero_patches.empty(), ErrorCode::kDegenerateInput,
          "vsa_cyclic_loss: zero hypervector at patches [" + zero_patches + "]");

  double sum = 0.0;
  for (std::size_t i = 0; i < v_x.size(); ++i) sum += cosine_distance(v_x[i], v_cycled[i]);
  return sum / static_cast<double>(v_x.size());
}

GanLoss gan_loss_nll(const ScoreBatch& real, const ScoreBatch& fake_translated,
                     const ScoreBatch& fake_mapped, const LossConfig& cfg) {
  cfg.validate();
  require_probabilities(real, "real");
  require_probabilities(fake_translated, "fake_translated");
  require_probabilities(fake_mapped, "fake_mapped");
  const double w1 = cfg.translated_weight;
  const double w2 = cfg.mapped_weight;
  auto log = [](double s) { return std::log(s); };
  auto log1m = [](double s) { return std::log1p(-s); };

  GanLoss out{};
  out.discriminator = -(mean_of(real, log) + w1 * mean_of(fake_translated, log1m) +
                        w2 * mean_of(fake_mapped, log1m));
  out.generator = -(w1 * mean_of(fake_translated, log) + w2 * mean_of(fake_mapped, log));
  return out;
}

GanLoss gan_loss_hinge(const ScoreBatch& real, const ScoreBatch& fake_translated,
                       const ScoreBatch& fake_mapped, const LossConfig& cfg) {
  cfg.validate();
  const double w1 = cfg.translated_weight;
  const double w2 = cfg.mapped_weight;
  auto real_margin = [](double s) { return std::max(0.0, 1.0 - s); };
  auto fake_margin = [](double s) { return std::max(0.0, 1.0 + s); };
  auto identity = [](double s) { return s; };

  GanLoss out{};
  out.discriminator = mean_of(real, real_margin) + w1 * mean_of(fake_translated, fake_margin) +
                      w2 * mean_of(fake_mapped, fake_margin);
  out.generator = -(w1 * mean_of(fake_translated, identity) + w2 * mean_of(fake_mapped, identity));
  return out;
}

GanLoss gan_loss(const ScoreBatch& real, const ScoreBatch& fake_translated,
                 const ScoreBatch& fake_mapped, const LossConfig& cfg) {
  return cfg.variant == GanVariant::kNll ? gan_loss_nll(real, fake_translated, fake_mapped, cfg)
                                         : gan_loss_hinge(real, fake_translated, fake_mapped, cfg);
}

double total_loss(double gan, double vsa, const LossConfig& cfg) {
  cfg.validate();
  require(std::isfinite(gan) && std::isfinite(vsa), ErrorCode::kInvalidArgument,
          "total_loss: non-finite term");
  return gan + cfg.lambda * vsa;
}

}  // namespace vsait
