#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "firecast/train.hpp"

namespace firecast {

// Labeled folder layout: root/fire/*.pgm and root/nofire/*.pgm. Samples are
// ordered fire block first, files lexicographically within each class. All
// images must share one size; mismatches are an error, never a resample.
Dataset dataset_load(const std::filesystem::path& root);

struct SynthManifest {
  std::filesystem::path root;
  std::vector<std::filesystem::path> fire_files;
  std::vector<std::filesystem::path> nofire_files;
};

// Writes count/2 fire images (dark noise in [0,60] plus one bright rectangle
// with values in [200,255], side 3..image_size/2) and count/2 nofire images
// (dark noise only). Byte-identical output for identical seeds. count must
// be even and >= 2.
SynthManifest synth_generate(const std::filesystem::path& out_dir,
                             std::size_t count, std::uint64_t seed,
                             std::size_t image_size);

}  // namespace firecast
