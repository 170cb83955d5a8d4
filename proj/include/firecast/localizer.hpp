#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "firecast/image.hpp"
#include "firecast/model.hpp"

namespace firecast {

struct PixelCoord {
  std::size_t x = 0;
  std::size_t y = 0;

  bool operator==(const PixelCoord&) const = default;
};

// Inclusive pixel rectangle.
struct BoundingBox {
  std::size_t x_min = 0, y_min = 0, x_max = 0, y_max = 0;

  bool operator==(const BoundingBox&) const = default;

  std::uint64_t area_px() const {
    return static_cast<std::uint64_t>(x_max - x_min + 1) *
           static_cast<std::uint64_t>(y_max - y_min + 1);
  }

  bool contains(const PixelCoord& p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
};

enum class FireLabel { Fire, NoFire };

struct Detection {
  FireLabel label = FireLabel::NoFire;
  double probability = 0.0;
  std::optional<BoundingBox> bbox;
  std::optional<std::uint64_t> area_px;
};

// All pixels at or above the nearest-rank quantile of the luminance
// distribution, in row-major scan order. Never empty: the global maximum
// always qualifies. quantile must lie in (0,1].
std::vector<PixelCoord> threshold_bright(const GrayImage& image,
                                         double quantile);

// Extreme coordinates of a nonempty pixel set on each axis.
BoundingBox bounding_box(std::span<const PixelCoord> bright);

// Classify, then localize when the probability reaches 0.5: the box spans
// the extreme bright pixels and area_px counts its inclusive pixels.
Detection detect_fire(const Model& model, const GrayImage& image,
                      double quantile = 0.99);

}  // namespace firecast
