#pragma once

#include <filesystem>
#include <string>

#include "firecast/fcm.hpp"
#include "firecast/localizer.hpp"
#include "firecast/model.hpp"
#include "firecast/train.hpp"

namespace firecast {

// Version-1 model document. Loading a saved model reproduces predictions
// bit-for-bit; weight arrays are written with round-trip-exact decimals.
void model_save(const Model& model, const std::filesystem::path& path);
Model model_load(const std::filesystem::path& path);

// Map document: concepts, weights (full matrix) or edge triples resolved
// through the linguistic scale, optional scale and config overrides.
Fcm fcm_file_load(const std::filesystem::path& path);
Fcm fcm_from_json_text(const std::string& text);

// {"values":[...]} with one entry per concept.
ActivationVector activation_load(const std::filesystem::path& path,
                                 std::size_t expected_size);

std::string detection_json(const Detection& detection);
std::string metrics_json(const Metrics& metrics);
std::string epoch_metrics_json(std::size_t epoch, const Metrics& metrics);
std::string trajectory_json(const Trajectory& trajectory);

}  // namespace firecast
