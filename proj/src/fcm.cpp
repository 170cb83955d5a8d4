#include "firecast/fcm.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "firecast/activation.hpp"
#include "firecast/errors.hpp"

namespace firecast {

CognitiveMatrix CognitiveMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  CognitiveMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw ValidationError("cognitive matrix is not square: row " + std::to_string(i) +
                            " has " + std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

LinguisticScale default_linguistic_scale() {
  return {{"extremely weak", 0.1},
          {"weak", 0.3},
          {"moderately", 0.5},
          {"stronger than usual", 0.7},
          {"strong", 0.9}};
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

double resolve_linguistic(const LinguisticScale& scale, const std::string& term) {
  if (scale.empty()) {
    throw InputError("linguistic scale is empty");
  }
  static constexpr const char* kNegative = "negative:";
  std::string key = term;
  double sign = 1.0;
  if (key.rfind(kNegative, 0) == 0) {
    key = trim(key.substr(std::string(kNegative).size()));
    sign = -1.0;
  }
  for (const auto& [name, value] : scale) {
    if (name == key) return sign * value;
  }
  std::string available;
  for (const auto& [name, value] : scale) {
    if (!available.empty()) available += ", ";
    available += "\"" + name + "\"";
  }
  throw InputError("unknown linguistic term \"" + term + "\"; available terms: " +
                   available);
}

Fcm fcm_build(std::vector<Concept> concepts, CognitiveMatrix weights, FcmConfig config) {
  const std::size_t n = concepts.size();
  if (n == 0) {
    throw ValidationError("a cognitive map needs at least one concept");
  }
  if (weights.n != n) {
    throw ValidationError("weight matrix is " + std::to_string(weights.n) + "x" +
                          std::to_string(weights.n) + " but there are " +
                          std::to_string(n) + " concepts");
  }
  std::unordered_set<std::size_t> seen;
  for (const Concept& c : concepts) {
    if (c.name.empty()) {
      throw ValidationError("concept " + std::to_string(c.id) + " has an empty name");
    }
    if (c.id >= n || !seen.insert(c.id).second) {
      throw ValidationError("concept ids must be unique and contiguous in 0.." +
                            std::to_string(n - 1) + "; offending id " +
                            std::to_string(c.id));
    }
  }
  std::sort(concepts.begin(), concepts.end(),
            [](const Concept& a, const Concept& b) { return a.id < b.id; });

  if (!(config.lambda > 0.0)) {
    throw ValidationError("lambda must be positive");
  }
  if (!(config.eps > 0.0)) {
    throw ValidationError("eps must be positive");
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double w = weights.at(i, j);
      if (!(w >= -1.0 && w <= 1.0)) {
        throw ValidationError("weight (" + std::to_string(i) + "," + std::to_string(j) +
                              ") = " + std::to_string(w) + " is outside [-1,1]");
      }
      if (i == j && w != 0.0 && !config.allow_self_loops) {
        throw ValidationError("diagonal weight (" + std::to_string(i) + "," +
                              std::to_string(i) + ") = " + std::to_string(w) +
                              " requires allow_self_loops");
      }
    }
  }
  return Fcm{std::move(concepts), std::move(weights), config};
}

namespace {

void require_activation(const Fcm& fcm, const ActivationVector& state, const char* what) {
  if (state.size() != fcm.size()) {
    throw DimensionError(std::string(what) + " has " + std::to_string(state.size()) +
                         " components, map has " + std::to_string(fcm.size()) +
                         " concepts");
  }
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (!(state[i] >= 0.0 && state[i] <= 1.0)) {
      throw DomainError(std::string(what) + " component " + std::to_string(i) +
                        " = " + std::to_string(state[i]) + " is outside [0,1]");
    }
  }
}

double max_abs_diff(const ActivationVector& a, const ActivationVector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

}  // namespace

ActivationVector fcm_step(const Fcm& fcm, const ActivationVector& state) {
  require_activation(fcm, state, "activation vector");
  const std::size_t n = fcm.size();
  ActivationVector next(n);
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += fcm.weights.at(i, j) * state[i];
    }
    next[j] = sigmoid(fcm.config.lambda * sum);
  }
  return next;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::FixedPoint: return "fixed_point";
    case Verdict::LimitCycle: return "limit_cycle";
    case Verdict::Exhausted: return "exhausted";
  }
  return "exhausted";
}

Trajectory fcm_run(const Fcm& fcm, const ActivationVector& initial) {
  require_activation(fcm, initial, "initial activation vector");
  Trajectory traj;
  traj.states.push_back(initial);
  const double eps = fcm.config.eps;
  for (std::size_t iter = 0; iter < fcm.config.max_iters; ++iter) {
    ActivationVector next = fcm_step(fcm, traj.states.back());
    traj.states.push_back(std::move(next));
    const ActivationVector& current = traj.states.back();
    if (max_abs_diff(current, traj.states[traj.states.size() - 2]) < eps) {
      traj.verdict = Verdict::FixedPoint;
      return traj;
    }
    // Most recent earlier match wins, giving the smallest period.
    for (std::size_t back = traj.states.size() - 2; back-- > 0;) {
      if (max_abs_diff(current, traj.states[back]) < eps) {
        traj.verdict = Verdict::LimitCycle;
        traj.period = traj.states.size() - 1 - back;
        return traj;
      }
    }
  }
  traj.verdict = Verdict::Exhausted;
  return traj;
}

ScenarioComparison scenario_compare(const Fcm& fcm, const ActivationVector& baseline,
                                    const ActivationVector& perturbed) {
  const Trajectory base = fcm_run(fcm, baseline);
  const Trajectory scen = fcm_run(fcm, perturbed);
  ScenarioComparison cmp;
  cmp.baseline_final = base.states.back();
  cmp.scenario_final = scen.states.back();
  cmp.baseline_verdict = base.verdict;
  cmp.scenario_verdict = scen.verdict;
  cmp.baseline_period = base.period;
  cmp.scenario_period = scen.period;
  cmp.comparable =
      base.verdict == Verdict::FixedPoint && scen.verdict == Verdict::FixedPoint;
  cmp.deltas.resize(fcm.size());
  for (std::size_t i = 0; i < fcm.size(); ++i) {
    cmp.deltas[i] = cmp.scenario_final[i] - cmp.baseline_final[i];
  }
  return cmp;
}

}  // namespace firecast
