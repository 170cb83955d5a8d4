#include "firecast/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "firecast/errors.hpp"

namespace firecast {

BceResult bce(int label, double p) {
  if (label != 0 && label != 1) {
    throw DomainError("bce label must be 0 or 1, got " + std::to_string(label));
  }
  if (!(p >= 0.0 && p <= 1.0)) {  // also rejects NaN
    throw DomainError("bce probability outside [0,1]: " + std::to_string(p));
  }
  // The y=0 branch clamps 1-p rather than reusing 1-clamp(p) so that
  // bce(0, p) and bce(1, 1-p) evaluate through identical arithmetic.
  const double q = label == 1 ? p : 1.0 - p;
  const double qc = std::clamp(q, kBceEpsilon, 1.0 - kBceEpsilon);
  const double loss = -std::log(qc);
  double grad = 0.0;
  if (q > kBceEpsilon && q < 1.0 - kBceEpsilon) {
    grad = label == 1 ? -1.0 / qc : 1.0 / qc;
  }
  return {loss, grad};
}

}  // namespace firecast
