#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace firecast {

struct Concept {
  std::size_t id = 0;
  std::string name;
};

// Weighted adjacency matrix of a fuzzy cognitive map. Row i is the cause,
// column j the effect; every entry lies in [-1,1].
struct CognitiveMatrix {
  std::size_t n = 0;
  std::vector<double> values;  // row-major n*n

  CognitiveMatrix() = default;
  explicit CognitiveMatrix(std::size_t size) : n(size), values(size * size, 0.0) {}
  static CognitiveMatrix from_rows(const std::vector<std::vector<double>>& rows);

  double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * n + j]; }
};

// Ordered term -> value mapping with values in [-1,1].
using LinguisticScale = std::vector<std::pair<std::string, double>>;

// {"extremely weak":0.1, "weak":0.3, "moderately":0.5,
//  "stronger than usual":0.7, "strong":0.9}
LinguisticScale default_linguistic_scale();

// Exact lookup, no fuzzy matching; a "negative:" prefix negates the base
// term's value. Unknown terms raise an error listing the available terms.
double resolve_linguistic(const LinguisticScale& scale, const std::string& term);

struct FcmConfig {
  double lambda = 1.0;          // squash steepness
  bool allow_self_loops = false;
  double eps = 1e-6;            // convergence tolerance
  std::size_t max_iters = 100;
};

// Per-concept activity levels, each in [0,1].
using ActivationVector = std::vector<double>;

// A validated map; build through fcm_build.
struct Fcm {
  std::vector<Concept> concepts;
  CognitiveMatrix weights;
  FcmConfig config;

  std::size_t size() const { return concepts.size(); }
  double weight(std::size_t cause, std::size_t effect) const {
    return weights.at(cause, effect);
  }
};

// Validates concept ids (unique, contiguous, nonempty names), weight range,
// and the zero-diagonal rule unless config.allow_self_loops is set.
Fcm fcm_build(std::vector<Concept> concepts, CognitiveMatrix weights,
              FcmConfig config = {});

// One synchronous update: C_j(t+1) = sigmoid(lambda * sum_i w(i,j) * C_i(t)).
ActivationVector fcm_step(const Fcm& fcm, const ActivationVector& state);

enum class Verdict { FixedPoint, LimitCycle, Exhausted };

std::string to_string(Verdict v);

// states[0] is the initial vector; fixed_point means the last two states
// differ by less than config.eps in every component; limit_cycle(period)
// means the last state matches an earlier one at that distance.
struct Trajectory {
  std::vector<ActivationVector> states;
  Verdict verdict = Verdict::Exhausted;
  std::size_t period = 0;  // set for limit_cycle
};

Trajectory fcm_run(const Fcm& fcm, const ActivationVector& initial);

// Final-state difference between two runs of the same map. Deltas are only
// meaningful when both runs reached a fixed point; `comparable` flags that.
struct ScenarioComparison {
  ActivationVector baseline_final;
  ActivationVector scenario_final;
  Verdict baseline_verdict = Verdict::Exhausted;
  Verdict scenario_verdict = Verdict::Exhausted;
  std::size_t baseline_period = 0;
  std::size_t scenario_period = 0;
  std::vector<double> deltas;  // scenario - baseline, componentwise
  bool comparable = false;
};

ScenarioComparison scenario_compare(const Fcm& fcm,
                                    const ActivationVector& baseline,
                                    const ActivationVector& perturbed);

}  // namespace firecast
