#pragma once

#include <span>
#include <vector>

#include "vsait/hypervector.hpp"

namespace vsait {

// Discriminator outputs for one batch of hypervectors. Nonempty, finite.
class ScoreBatch {
 public:
  explicit ScoreBatch(std::vector<double> scores);

  [[nodiscard]] std::span<const double> scores() const noexcept { return scores_; }
  [[nodiscard]] std::size_t size() const noexcept { return scores_.size(); }

 private:
  std::vector<double> scores_;
};

enum class GanVariant { kNll, kHinge };

inline constexpr double kLambdaGtaToCityscapes = 10.0;
inline constexpr double kLambdaDefault = 5.0;

struct LossConfig {
  double lambda = kLambdaDefault;
  // Weights of the translated and mapped negative terms.
  double translated_weight = 1.0;
  double mapped_weight = 1.0;
  GanVariant variant = GanVariant::kHinge;

  void validate() const;
};

struct GanLoss {
  double discriminator;
  double generator;
};

// Mean cosine distance between source patches and cycled patches; in [0, 2].
double vsa_cyclic_loss(std::span<const Hypervector> v_x, std::span<const Hypervector> v_cycled);

// Three-term adversarial loss over probabilities in (0, 1); the generator
// side uses the non-saturating form.
GanLoss gan_loss_nll(const ScoreBatch& real, const ScoreBatch& fake_translated,
                     const ScoreBatch& fake_mapped, const LossConfig& cfg);

// Geometric-GAN hinge form over unbounded scores.
GanLoss gan_loss_hinge(const ScoreBatch& real, const ScoreBatch& fake_translated,
                       const ScoreBatch& fake_mapped, const LossConfig& cfg);

// Dispatches on cfg.variant.
GanLoss gan_loss(const ScoreBatch& real, const ScoreBatch& fake_translated,
                 const ScoreBatch& fake_mapped, const LossConfig& cfg);

double total_loss(double gan, double vsa, const LossConfig& cfg);

}  // namespace vsait
