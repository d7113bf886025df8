#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vsait/hypervector.hpp"

namespace vsait {

// One H x W x C feature map, stored row-major (row, column, channel) at
// 32-bit precision exactly as it appears on disk.
struct FeatureLayer {
  std::string name;
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::uint32_t channels = 0;
  std::vector<float> data;

  [[nodiscard]] std::size_t element_count() const noexcept {
    return static_cast<std::size_t>(height) * width * channels;
  }
  [[nodiscard]] float at(std::size_t row, std::size_t col, std::size_t channel) const {
    return data[(row * width + col) * channels + channel];
  }

  friend bool operator==(const FeatureLayer&, const FeatureLayer&) = default;
};

struct FeatureMapSet {
  std::vector<FeatureLayer> layers;

  // Checks dims >= 1, payload sizes, finite data and unique names.
  void validate() const;

  friend bool operator==(const FeatureMapSet&, const FeatureMapSet&) = default;
};

// VSAF: "VSAF" magic, u32 version, u32 layer count, per-layer header
// (u16 name length, UTF-8 name, u32 H, W, C), then the f32 payloads in
// header order. Everything little-endian.
inline constexpr std::uint32_t kVsafVersion = 1;

std::vector<std::uint8_t> encode_vsaf(const FeatureMapSet& fm);
FeatureMapSet decode_vsaf(std::span<const std::uint8_t> bytes);

FeatureMapSet read_feature_file(const std::filesystem::path& path);
// Writes via a temporary file and rename, so a failed write leaves no output.
void write_feature_file(const FeatureMapSet& fm, const std::filesystem::path& path);

// Hypervector lists travel as a single 1 x count x dim layer.
FeatureMapSet hypervectors_to_feature_maps(std::span<const Hypervector> vs, std::string layer_name);
std::vector<Hypervector> hypervectors_from_feature_maps(const FeatureMapSet& fm);

}  // namespace vsait
