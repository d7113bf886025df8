#include "vsait/feature_maps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>

#include "vsait/error.hpp"

namespace vsait {

namespace {

constexpr char kMagic[4] = {'V', 'S', 'A', 'F'};
// 2^40 floats; anything larger is a corrupt header, not a real feature map.
constexpr std::uint64_t kMaxLayerElements = std::uint64_t{1} << 40;

class Writer {
 public:
  void bytes(const void* data, std::size_t size) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), p, p + size);
  }
  template <typename T>
  void little(T value) {
    using U = std::make_unsigned_t<T>;
    auto bits = static_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      out_.push_back(static_cast<std::uint8_t>(bits & 0xFFU));
      bits = static_cast<U>(bits >> 8);
    }
  }
  void f32(float value) { little(std::bit_cast<std::uint32_t>(value)); }

  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::span<const std::uint8_t> take(std::size_t size, const char* what) {
    require(remaining() >= size, ErrorCode::kTruncated,
            std::string("VSAF: truncated while reading ") + what);
    auto out = bytes_.subspan(pos_, size);
    pos_ += size;
    return out;
  }
  template <typename T>
  T little(const char* what) {
    auto raw = take(sizeof(T), what);
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) value |= std::uint64_t{raw[i]} << (8 * i);
    return static_cast<T>(value);
  }

  [[nodiscard]] std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

void FeatureMapSet::validate() const {
  std::set<std::string> names;
  for (const FeatureLayer& layer : layers) {
    require(layer.height >= 1 && layer.width >= 1 && layer.channels >= 1,
            ErrorCode::kInvalidArgument, "feature layer '" + layer.name + "': dims must be >= 1");
    require(layer.name.size() <= std::numeric_limits<std::uint16_t>::max(),
            ErrorCode::kInvalidArgument, "feature layer name too long");
    require(names.insert(layer.name).second, ErrorCode::kInvalidArgument,
            "duplicate feature layer name '" + layer.name + "'");
    require(layer.data.size() == layer.element_count(), ErrorCode::kInvalidArgument,
            "feature layer '" + layer.name + "': payload size does not match H*W*C");
    require(std::all_of(layer.data.begin(), layer.data.end(),
                        [](float x) { return std::isfinite(x); }),
            ErrorCode::kInvalidArgument, "feature layer '" + layer.name + "': non-finite value");
  }
}

std::vector<std::uint8_t> encode_vsaf(const FeatureMapSet& fm) {
  fm.validate();
  Writer w;
  w.bytes(kMagic, sizeof(kMagic));
  w.little(kVsafVersion);
  w.little(static_cast<std::uint32_t>(fm.layers.size()));
  for (const FeatureLayer& layer : fm.layers) {
    w.little(static_cast<std::uint16_t>(layer.name.size()));
    w.bytes(layer.name.data(), layer.name.size());
    w.little(layer.height);
    w.little(layer.width);
    w.little(layer.channels);
  }
  for (const FeatureLayer& layer : fm.layers) {
    for (float x : layer.data) w.f32(x);
  }
  return w.take();
}

FeatureMapSet decode_vsaf(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  require(bytes.size() >= sizeof(kMagic) && std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) == 0,
          ErrorCode::kBadMagic, "VSAF: bad magic bytes");
  r.take(sizeof(kMagic), "magic");
  const auto version = r.little<std::uint32_t>("version");
  require(version == kVsafVersion, ErrorCode::kVersionMismatch,
          "VSAF: unsupported version " + std::to_string(version));
  const auto layer_count = r.little<std::uint32_t>("layer count");

  FeatureMapSet fm;
  std::uint64_t payload_bytes = 0;
  for (std::uint32_t i = 0; i < layer_count; ++i) {
    FeatureLayer layer;
    const auto name_len = r.little<std::uint16_t>("layer name length");
    auto name = r.take(name_len, "layer name");
    layer.name.assign(name.begin(), name.end());
    layer.height = r.little<std::uint32_t>("layer height");
    layer.width = r.little<std::uint32_t>("layer width");
    layer.channels = r.little<std::uint32_t>("layer channels");
    const std::uint64_t hw = std::uint64_t{layer.height} * layer.width;
    require(layer.channels == 0 || hw <= kMaxLayerElements / layer.channels,
            ErrorCode::kDimensionOverflow, "VSAF: layer '" + layer.name + "' is too large");
    payload_bytes += hw * layer.channels * sizeof(float);
    require(payload_bytes <= kMaxLayerElements * sizeof(float) * 4, ErrorCode::kDimensionOverflow,
            "VSAF: total payload too large");
    fm.layers.push_back(std::move(layer));
  }

  require(r.remaining() == payload_bytes, ErrorCode::kTruncated,
          "VSAF: header declares " + std::to_string(payload_bytes) + " payload bytes, file has " +
              std::to_string(r.remaining()));
  for (FeatureLayer& layer : fm.layers) {
    layer.data.resize(layer.element_count());
    auto raw = r.take(layer.data.size() * sizeof(float), "payload");
    for (std::size_t j = 0; j < layer.data.size(); ++j) {
      std::uint32_t bits = 0;
      for (std::size_t b = 0; b < 4; ++b) bits |= std::uint32_t{raw[4 * j + b]} << (8 * b);
      layer.data[j] = std::bit_cast<float>(bits);
    }
  }
  fm.validate();
  return fm;
}

FeatureMapSet read_feature_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  require(!in.bad(), ErrorCode::kIo, "error reading '" + path.string() + "'");
  try {
    return decode_vsaf(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_feature_file(const FeatureMapSet& fm, const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = encode_vsaf(fm);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCode::kIo, "cannot open '" + tmp.string() + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
      std::filesystem::remove(tmp);
      fail(ErrorCode::kIo, "error writing '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

FeatureMapSet hypervectors_to_feature_maps(std::span<const Hypervector> vs, std::string layer_name) {
  require(!vs.empty(), ErrorCode::kInvalidArgument, "no hypervectors to serialize");
  const std::size_t dim = vs.front().dim();
  FeatureLayer layer;
  layer.name = std::move(layer_name);
  layer.height = 1;
  layer.width = static_cast<std::uint32_t>(vs.size());
  layer.channels = static_cast<std::uint32_t>(dim);
  layer.data.reserve(vs.size() * dim);
  for (const Hypervector& v : vs) {
    require(v.dim() == dim, ErrorCode::kInvalidArgument, "hypervector dims differ");
    for (double x : v.values()) layer.data.push_back(static_cast<float>(x));
  }
  return FeatureMapSet{{std::move(layer)}};
}

std::vector<Hypervector> hypervectors_from_feature_maps(const FeatureMapSet& fm) {
  require(fm.layers.size() == 1 && fm.layers.front().height == 1, ErrorCode::kInvalidArgument,
          "hypervector file must hold exactly one 1 x count x dim layer");
  const FeatureLayer& layer = fm.layers.front();
  std::vector<Hypervector> out;
  out.reserve(layer.width);
  for (std::size_t i = 0; i < layer.width; ++i) {
    const auto first = layer.data.begin() + static_cast<std::ptrdiff_t>(i * layer.channels);
    out.emplace_back(std::vector<double>(first, first + layer.channels));
  }
  return out;
}

}  // namespace vsait
