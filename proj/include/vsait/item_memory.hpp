#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vsait/hypervector.hpp"

namespace vsait {

struct Match {
  std::string label;
  double similarity;
};

// Labeled cleanup memory, scanned exhaustively. Const lookups may run
// concurrently; add() needs exclusive access.
class ItemMemory {
 public:
  explicit ItemMemory(std::size_t dim);

  // Throws invalid-argument on a duplicate label or a dim mismatch.
  void add(std::string label, Hypervector vector);

  // Top-k labels by cosine similarity, best first. Ties keep insertion order.
  // k larger than the memory returns every entry.
  [[nodiscard]] std::vector<Match> cleanup(const Hypervector& query, std::size_t k = 1) const;

  [[nodiscard]] bool contains(const std::string& label) const;
  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  std::size_t dim_;
  std::vector<std::string> labels_;
  std::vector<Hypervector> vectors_;
};

}  // namespace vsait
