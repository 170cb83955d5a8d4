#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "firecast/tensor.hpp"

namespace firecast {

// 8-bit grayscale image, row-major.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
  std::uint8_t& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
};

// Parse P2 (ASCII) or P5 (binary) PGM with maxval <= 255. Comment lines are
// skipped. ParseError messages carry the byte offset of the problem.
GrayImage pgm_parse(std::span<const std::uint8_t> bytes);

GrayImage pgm_load(const std::filesystem::path& path);

// P5 encoding; pgm_parse(pgm_bytes(img)) == img bitwise.
std::vector<std::uint8_t> pgm_bytes(const GrayImage& image);

void pgm_save(const GrayImage& image, const std::filesystem::path& path);

// [1,H,W] tensor with pixels divided by 255.
Tensor image_to_tensor(const GrayImage& image);

}  // namespace firecast
