#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "firecast/fcm.hpp"
#include "firecast/localizer.hpp"

namespace firecast {

struct TimedDetection {
  std::int64_t timestamp = 0;  // epoch seconds
  Detection detection;
};

// Detections ordered by nondecreasing timestamp.
struct DetectionLog {
  std::vector<TimedDetection> entries;
};

// Validates the timestamp ordering.
DetectionLog make_detection_log(std::vector<TimedDetection> entries);

struct TimeWindow {
  std::int64_t start = 0;
  std::int64_t end = 0;
};

std::size_t count_fires_in_window(const DetectionLog& log, TimeWindow window);

// min(1, fires_in_window / cap): linear saturation of the fire count onto
// a concept activation. start must not exceed end; cap >= 1.
double frequency_activation(const DetectionLog& log, TimeWindow window,
                            std::size_t cap);

struct ScenarioReport {
  TimeWindow window;
  std::size_t fire_count = 0;
  double activation_e5 = 0.0;
  std::vector<std::string> concept_names;
  ActivationVector baseline_fixed_point;
  ActivationVector scenario_fixed_point;
  std::vector<double> deltas;  // scenario - baseline
  Verdict baseline_verdict = Verdict::Exhausted;
  Verdict scenario_verdict = Verdict::Exhausted;
  bool converged = false;  // both verdicts fixed_point
};

// Perturb the baseline's e5 component to e5_activation, run both states to
// convergence, and package the comparison. window and fire_count are left
// for the caller, which knows the detection log.
ScenarioReport run_fire_scenario(const Fcm& fcm,
                                 const ActivationVector& baseline,
                                 double e5_activation, std::size_t e5_index);

struct RenderedReport {
  std::string json;   // machine-readable document
  std::string table;  // rows sorted by |delta| descending, then concept id
};

// Deterministic: identical reports render to identical bytes.
RenderedReport render_report(const ScenarioReport& report);

}  // namespace firecast
