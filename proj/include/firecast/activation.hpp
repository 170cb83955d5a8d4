#pragma once

#include <cmath>
#include <string>

namespace firecast {

enum class Activation { Relu, Sigmoid };

// Overflow-safe logistic; exactly 0.5 at x = 0.
inline double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double t = std::exp(x);
  return t / (1.0 + t);
}

struct ActValue {
  double value;
  double derivative;
};

// Value and pointwise derivative at x. ReLU uses derivative 0 at x == 0.
inline ActValue activation_apply(double x, Activation kind) {
  if (kind == Activation::Relu) {
    return x > 0.0 ? ActValue{x, 1.0} : ActValue{0.0, 0.0};
  }
  const double v = sigmoid(x);
  return {v, v * (1.0 - v)};
}

std::string to_string(Activation kind);
Activation activation_from_string(const std::string& name);

}  // namespace firecast
