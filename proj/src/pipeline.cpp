#include "firecast/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <string>

#include <json.hpp>

#include "firecast/errors.hpp"

namespace firecast {

using ordered_json = nlohmann::ordered_json;

DetectionLog make_detection_log(std::vector<TimedDetection> entries) {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].timestamp < entries[i - 1].timestamp) {
      throw InputError("detection log timestamps must be nondecreasing; entry " +
                       std::to_string(i) + " goes backwards");
    }
  }
  return DetectionLog{std::move(entries)};
}

std::size_t count_fires_in_window(const DetectionLog& log, TimeWindow window) {
  std::size_t count = 0;
  for (const TimedDetection& entry : log.entries) {
    if (entry.timestamp >= window.start && entry.timestamp <= window.end &&
        entry.detection.label == FireLabel::Fire) {
      ++count;
    }
  }
  return count;
}

double frequency_activation(const DetectionLog& log, TimeWindow window,
                            std::size_t cap) {
  if (window.start > window.end) {
    throw InputError("inverted time window: start " + std::to_string(window.start) +
                     " is after end " + std::to_string(window.end));
  }
  if (cap == 0) {
    throw InputError("frequency cap must be at least 1");
  }
  const std::size_t count = count_fires_in_window(log, window);
  return std::min(1.0, static_cast<double>(count) / static_cast<double>(cap));
}

ScenarioReport run_fire_scenario(const Fcm& fcm, const ActivationVector& baseline,
                                 double e5_activation, std::size_t e5_index) {
  if (e5_index >= fcm.size()) {
    throw InputError("fire-frequency concept index " + std::to_string(e5_index) +
                     " is out of range for a map with " + std::to_string(fcm.size()) +
                     " concepts");
  }
  if (!(e5_activation >= 0.0 && e5_activation <= 1.0)) {
    throw DomainError("fire-frequency activation " + std::to_string(e5_activation) +
                      " is outside [0,1]");
  }
  ActivationVector perturbed = baseline;
  perturbed[e5_index] = e5_activation;

  const ScenarioComparison cmp = scenario_compare(fcm, baseline, perturbed);

  ScenarioReport report;
  report.activation_e5 = e5_activation;
  report.concept_names.reserve(fcm.size());
  for (const Concept& c : fcm.concepts) report.concept_names.push_back(c.name);
  report.baseline_fixed_point = cmp.baseline_final;
  report.scenario_fixed_point = cmp.scenario_final;
  report.deltas = cmp.deltas;
  report.baseline_verdict = cmp.baseline_verdict;
  report.scenario_verdict = cmp.scenario_verdict;
  report.converged = cmp.comparable;
  return report;
}

RenderedReport render_report(const ScenarioReport& report) {
  ordered_json doc;
  doc["window"] = {{"start", report.window.start}, {"end", report.window.end}};
  doc["fire_count"] = report.fire_count;
  doc["activation_e5"] = report.activation_e5;
  doc["baseline"] = report.baseline_fixed_point;
  doc["scenario"] = report.scenario_fixed_point;
  doc["deltas"] = report.deltas;
  doc["verdicts"] = {{"baseline", to_string(report.baseline_verdict)},
                     {"scenario", to_string(report.scenario_verdict)}};
  if (!report.converged) {
    doc["warning"] = "non-converged";
  }

  const std::size_t n = report.deltas.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double da = std::abs(report.deltas[a]);
    const double db = std::abs(report.deltas[b]);
    if (da != db) return da > db;
    return a < b;
  });

  std::size_t name_width = 7;  // "concept"
  for (const std::string& name : report.concept_names) {
    name_width = std::max(name_width, name.size());
  }

  std::string table;
  char line[512];
  std::snprintf(line, sizeof line, "%3s  %-*s  %10s  %10s  %10s\n", "id",
                static_cast<int>(name_width), "concept", "baseline", "scenario",
                "delta");
  table += line;
  for (std::size_t idx : order) {
    const std::string& name =
        idx < report.concept_names.size() ? report.concept_names[idx] : "";
    std::snprintf(line, sizeof line, "%3zu  %-*s  %10.6f  %10.6f  %+10.6f\n", idx,
                  static_cast<int>(name_width), name.c_str(),
                  report.baseline_fixed_point[idx], report.scenario_fixed_point[idx],
                  report.deltas[idx]);
    table += line;
  }
  if (!report.converged) {
    table += "warning: non-converged (baseline=" + to_string(report.baseline_verdict) +
             ", scenario=" + to_string(report.scenario_verdict) + ")\n";
  }

  return {doc.dump(), std::move(table)};
}

}  // namespace firecast
