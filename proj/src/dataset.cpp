#include "firecast/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <string>
#include <system_error>

#include "firecast/errors.hpp"
#include "firecast/image.hpp"
#include "firecast/rng.hpp"

namespace firecast {

namespace fs = std::filesystem;

namespace {

std::vector<fs::path> sorted_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  return files;
}

}  // namespace

Dataset dataset_load(const fs::path& root) {
  const std::pair<const char*, int> classes[] = {{"fire", 1}, {"nofire", 0}};
  Dataset samples;
  std::size_t width = 0, height = 0;
  for (const auto& [dirname, label] : classes) {
    const fs::path dir = root / dirname;
    if (!fs::is_directory(dir)) {
      throw InputError("missing class directory " + dir.string());
    }
    const std::vector<fs::path> files = sorted_files(dir);
    if (files.empty()) {
      throw InputError("class directory " + dir.string() + " contains no images");
    }
    for (const fs::path& file : files) {
      const GrayImage image = pgm_load(file);
      if (width == 0) {
        width = image.width;
        height = image.height;
      } else if (image.width != width || image.height != height) {
        // No silent resampling.
        throw InputError(file.string() + " is " + std::to_string(image.width) + "x" +
                         std::to_string(image.height) + ", dataset is " +
                         std::to_string(width) + "x" + std::to_string(height));
      }
      samples.push_back({image_to_tensor(image), label});
    }
  }
  return samples;
}

SynthManifest synth_generate(const fs::path& out_dir, std::size_t count,
                             std::uint64_t seed, std::size_t image_size) {
  if (count < 2 || count % 2 != 0) {
    throw InputError("count must be even and at least 2, got " + std::to_string(count));
  }
  if (image_size < 6) {
    throw InputError("image size must be at least 6, got " + std::to_string(image_size));
  }
  std::error_code ec;
  fs::create_directories(out_dir / "fire", ec);
  if (ec) throw IoError("cannot create " + (out_dir / "fire").string() + ": " + ec.message());
  fs::create_directories(out_dir / "nofire", ec);
  if (ec) throw IoError("cannot create " + (out_dir / "nofire").string() + ": " + ec.message());

  Rng rng(seed);
  const std::size_t half = count / 2;
  const std::size_t max_side = image_size / 2;

  SynthManifest manifest;
  manifest.root = out_dir;

  const auto noise_image = [&]() {
    GrayImage img;
    img.width = img.height = image_size;
    img.pixels.resize(image_size * image_size);
    for (std::uint8_t& p : img.pixels) {
      p = static_cast<std::uint8_t>(rng.below(61));  // dark background, 0..60
    }
    return img;
  };

  char name[32];
  for (std::size_t i = 0; i < half; ++i) {
    GrayImage img = noise_image();
    const std::size_t rw = 3 + rng.below(max_side - 3 + 1);
    const std::size_t rh = 3 + rng.below(max_side - 3 + 1);
    const std::size_t x0 = rng.below(image_size - rw + 1);
    const std::size_t y0 = rng.below(image_size - rh + 1);
    for (std::size_t y = y0; y < y0 + rh; ++y) {
      for (std::size_t x = x0; x < x0 + rw; ++x) {
        img.at(x, y) = static_cast<std::uint8_t>(200 + rng.below(56));  // 200..255
      }
    }
    std::snprintf(name, sizeof name, "fire_%04zu.pgm", i);
    const fs::path path = out_dir / "fire" / name;
    pgm_save(img, path);
    manifest.fire_files.push_back(path);
  }
  for (std::size_t i = 0; i < half; ++i) {
    GrayImage img = noise_image();
    std::snprintf(name, sizeof name, "nofire_%04zu.pgm", i);
    const fs::path path = out_dir / "nofire" / name;
    pgm_save(img, path);
    manifest.nofire_files.push_back(path);
  }
  return manifest;
}

}  // namespace firecast
