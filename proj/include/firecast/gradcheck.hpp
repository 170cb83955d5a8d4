#pragma once

#include "firecast/model.hpp"

namespace firecast {

// Compare every analytic parameter gradient against the central difference
// (L(t+h) - L(t-h)) / 2h and return the worst relative error
// |a - n| / max(|a|, |n|, 1e-8).
//
// The model overload probes the full BCE training loss against `label`;
// the layer overloads probe the surrogate loss 0.5 * sum(output^2).
double gradient_check(const Model& model, const Tensor& probe, int label,
                      double h);
double gradient_check(const ConvLayer& layer, const Tensor& probe, double h);
double gradient_check(const DenseLayer& layer, const Tensor& probe, double h);

}  // namespace firecast
