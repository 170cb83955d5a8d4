#pragma once

namespace firecast {

inline constexpr double kBceEpsilon = 1e-7;

struct BceResult {
  double loss;
  double dloss_dp;
};

// Binary cross-entropy of a predicted probability against a {0,1} label.
// p is clamped to [kBceEpsilon, 1 - kBceEpsilon] before the logarithms;
// the gradient follows the clamped form (zero where the clamp is flat).
// Throws DomainError for p outside [0,1] or a label outside {0,1}.
BceResult bce(int label, double p);

}  // namespace firecast
