#pragma once

// Test-side oracles, kept independent of the library implementations they
// check: a nested-vector sliding-window convolution, a central-difference
// probe, and a straight-line cognitive-map recurrence.

#include <cmath>
#include <functional>
#include <vector>

#include "firecast/rng.hpp"
#include "firecast/tensor.hpp"

namespace oracles {

using Grid3 = std::vector<std::vector<std::vector<double>>>;

inline Grid3 grid3_from_tensor(const firecast::Tensor& t) {
  Grid3 g(t.shape[0], std::vector<std::vector<double>>(
                          t.shape[1], std::vector<double>(t.shape[2], 0.0)));
  std::size_t flat = 0;
  for (auto& plane : g) {
    for (auto& row : plane) {
      for (double& v : row) v = t[flat++];
    }
  }
  return g;
}

// Valid cross-correlation computed the slow, obvious way.
inline Grid3 conv_oracle(const Grid3& input,
                         const std::vector<Grid3>& filters,
                         const std::vector<double>& bias) {
  const std::size_t channels = input.size();
  const std::size_t height = input[0].size();
  const std::size_t width = input[0][0].size();
  const std::size_t k = filters[0][0].size();
  const std::size_t out_h = height - k + 1;
  const std::size_t out_w = width - k + 1;
  Grid3 out(filters.size(), std::vector<std::vector<double>>(
                                out_h, std::vector<double>(out_w, 0.0)));
  for (std::size_t f = 0; f < filters.size(); ++f) {
    for (std::size_t y = 0; y < out_h; ++y) {
      for (std::size_t x = 0; x < out_w; ++x) {
        double acc = bias[f];
        for (std::size_t c = 0; c < channels; ++c) {
          for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
              acc += filters[f][c][i][j] * input[c][y + i][x + j];
            }
          }
        }
        out[f][y][x] = acc;
      }
    }
  }
  return out;
}

// (L(x+h) - L(x-h)) / 2h with the parameter restored afterwards.
inline double central_difference(double& param, double h,
                                 const std::function<double()>& loss) {
  const double original = param;
  param = original + h;
  const double plus = loss();
  param = original - h;
  const double minus = loss();
  param = original;
  return (plus - minus) / (2.0 * h);
}

inline double rel_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) /
         std::max({std::abs(analytic), std::abs(numeric), 1e-8});
}

// Straight-line evaluation of the concept-activity recurrence, written
// without any library code.
inline std::vector<std::vector<double>> fcm_oracle(
    const std::vector<std::vector<double>>& weights,
    const std::vector<double>& initial, double lambda, std::size_t steps) {
  std::vector<std::vector<double>> states{initial};
  const std::size_t n = initial.size();
  for (std::size_t t = 0; t < steps; ++t) {
    const std::vector<double>& prev = states.back();
    std::vector<double> next(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += weights[i][j] * prev[i];
      next[j] = 1.0 / (1.0 + std::exp(-lambda * s));
    }
    states.push_back(next);
  }
  return states;
}

inline firecast::Tensor random_tensor(const firecast::Shape& shape,
                                      firecast::Rng& rng, double lo = -1.0,
                                      double hi = 1.0) {
  firecast::Tensor t(shape);
  for (double& v : t.data) v = rng.uniform(lo, hi);
  return t;
}

}  // namespace oracles
