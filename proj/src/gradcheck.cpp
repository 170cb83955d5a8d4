#include "firecast/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "firecast/errors.hpp"
#include "firecast/loss.hpp"

namespace firecast {

namespace {

double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) /
         std::max({std::abs(analytic), std::abs(numeric), 1e-8});
}

// Central-difference sweep over every element of every parameter tensor.
double check_parameters(std::vector<Tensor*> params,
                        const std::vector<const Tensor*>& analytic, double h,
                        const std::function<double()>& loss) {
  double worst = 0.0;
  for (std::size_t t = 0; t < params.size(); ++t) {
    Tensor& tensor = *params[t];
    for (std::size_t e = 0; e < tensor.numel(); ++e) {
      const double original = tensor[e];
      tensor[e] = original + h;
      const double plus = loss();
      tensor[e] = original - h;
      const double minus = loss();
      tensor[e] = original;
      if (!std::isfinite(plus) || !std::isfinite(minus)) {
        throw NumericError("non-finite loss while probing parameter tensor " +
                           std::to_string(t) + " element " + std::to_string(e));
      }
      const double numeric = (plus - minus) / (2.0 * h);
      worst = std::max(worst, relative_error((*analytic[t])[e], numeric));
    }
  }
  return worst;
}

void require_positive_step(double h) {
  if (!(h > 0.0)) {
    throw DomainError("finite-difference step must be positive, got " +
                      std::to_string(h));
  }
}

}  // namespace

double gradient_check(const Model& model, const Tensor& probe, int label,
                      double h) {
  require_positive_step(h);
  Model copy = model;
  const ForwardTrace trace = model_forward(copy, probe);
  const BceResult at_point = bce(label, trace.prob);
  if (!std::isfinite(at_point.loss)) {
    throw NumericError("non-finite loss at the probe point");
  }
  ModelGrads grads = model_backward(copy, probe, trace, at_point.dloss_dp);
  auto grad_list = grads.list();
  std::vector<const Tensor*> analytic(grad_list.begin(), grad_list.end());
  auto params = model_parameters(copy);
  return check_parameters({params.begin(), params.end()}, analytic, h, [&]() {
    return bce(label, model_predict(copy, probe)).loss;
  });
}

double gradient_check(const ConvLayer& layer, const Tensor& probe, double h) {
  require_positive_step(h);
  ConvLayer copy = layer;
  const Tensor out = conv2d_forward(probe, copy);
  // Surrogate loss 0.5*sum(out^2), so dL/dout is the output itself.
  ConvGrads grads = conv2d_backward(probe, copy, out);
  const auto loss = [&]() {
    const Tensor y = conv2d_forward(probe, copy);
    double acc = 0.0;
    for (double v : y.data) acc += 0.5 * v * v;
    return acc;
  };
  return check_parameters({&copy.weights, &copy.bias}, {&grads.weights, &grads.bias},
                          h, loss);
}

double gradient_check(const DenseLayer& layer, const Tensor& probe, double h) {
  require_positive_step(h);
  DenseLayer copy = layer;
  const DenseForward fwd = dense_forward(probe, copy);
  DenseGrads grads = dense_backward(probe, copy, fwd.output);
  const auto loss = [&]() {
    const DenseForward y = dense_forward(probe, copy);
    double acc = 0.0;
    for (double v : y.output.data) acc += 0.5 * v * v;
    return acc;
  };
  return check_parameters({&copy.weights, &copy.bias}, {&grads.weights, &grads.bias},
                          h, loss);
}

}  // namespace firecast
