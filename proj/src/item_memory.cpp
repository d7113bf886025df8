#include "vsait/item_memory.hpp"

#include <algorithm>
#include <numeric>

#include "vsait/error.hpp"

namespace vsait {

ItemMemory::ItemMemory(std::size_t dim) : dim_(dim) {
  require(dim >= 1, ErrorCode::kInvalidArgument, "item memory dim must be >= 1");
}

void ItemMemory::add(std::string label, Hypervector vector) {
  require(vector.dim() == dim_, ErrorCode::kInvalidArgument,
          "item memory: '" + label + "' has dim " + std::to_string(vector.dim()) + ", expected " +
              std::to_string(dim_));
  require(!contains(label), ErrorCode::kInvalidArgument,
          "item memory: duplicate label '" + label + "'");
  labels_.push_back(std::move(label));
  vectors_.push_back(std::move(vector));
}

std::vector<Match> ItemMemory::cleanup(const Hypervector& query, std::size_t k) const {
  require(!labels_.empty(), ErrorCode::kInvalidState, "item memory is empty");
  require(k >= 1, ErrorCode::kInvalidArgument, "cleanup: k must be >= 1");
  require(query.dim() == dim_, ErrorCode::kInvalidArgument, "cleanup: query dim mismatch");
  require(query.norm() > 0.0, ErrorCode::kDegenerateInput, "cleanup: zero query");

  std::vector<double> sims(vectors_.size());
  for (std::size_t i = 0; i < vectors_.size(); ++i) sims[i] = cosine_similarity(query, vectors_[i]);

  std::vector<std::size_t> order(vectors_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sims[a] > sims[b]; });

  std::vector<Match> out;
  const std::size_t count = std::min(k, order.size());
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back({labels_[order[i]], sims[order[i]]});
  return out;
}

bool ItemMemory::contains(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

}  // namespace vsait
