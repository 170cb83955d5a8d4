#include "firecast/localizer.hpp"

#include <array>
#include <cmath>
#include <string>

#include "firecast/errors.hpp"

namespace firecast {

std::vector<PixelCoord> threshold_bright(const GrayImage& image, double quantile) {
  if (image.pixels.empty()) {
    throw InputError("cannot threshold an empty image");
  }
  if (!(quantile > 0.0 && quantile <= 1.0)) {
    throw DomainError("quantile must lie in (0,1], got " + std::to_string(quantile));
  }
  const std::size_t n = image.pixels.size();

  // Nearest-rank index, guarded so exact-integer products do not round up.
  const double raw = std::ceil(quantile * static_cast<double>(n) - 1e-9);
  std::size_t rank = raw < 1.0 ? 1 : static_cast<std::size_t>(raw);
  rank = std::min(rank, n);

  std::array<std::size_t, 256> counts{};
  for (std::uint8_t v : image.pixels) ++counts[v];
  std::size_t cumulative = 0;
  std::uint8_t threshold = 255;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    cumulative += counts[v];
    if (cumulative >= rank) {
      threshold = static_cast<std::uint8_t>(v);
      break;
    }
  }

  std::vector<PixelCoord> bright;
  for (std::size_t y = 0; y < image.height; ++y) {
    for (std::size_t x = 0; x < image.width; ++x) {
      if (image.at(x, y) >= threshold) bright.push_back({x, y});
    }
  }
  return bright;
}

BoundingBox bounding_box(std::span<const PixelCoord> bright) {
  if (bright.empty()) {
    throw InputError("cannot fit a bounding box to an empty coordinate set");
  }
  BoundingBox box{bright[0].x, bright[0].y, bright[0].x, bright[0].y};
  for (const PixelCoord& p : bright) {
    box.x_min = std::min(box.x_min, p.x);
    box.x_max = std::max(box.x_max, p.x);
    box.y_min = std::min(box.y_min, p.y);
    box.y_max = std::max(box.y_max, p.y);
  }
  return box;
}

Detection detect_fire(const Model& model, const GrayImage& image, double quantile) {
  const double prob = model_predict(model, image_to_tensor(image));
  Detection detection;
  detection.probability = prob;
  if (prob >= 0.5) {
    detection.label = FireLabel::Fire;
    const std::vector<PixelCoord> bright = threshold_bright(image, quantile);
    const BoundingBox box = bounding_box(bright);
    detection.bbox = box;
    detection.area_px = box.area_px();
  } else {
    detection.label = FireLabel::NoFire;
  }
  return detection;
}

}  // namespace firecast
