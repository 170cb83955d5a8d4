#include "firecast/model.hpp"

#include <string>

#include "firecast/errors.hpp"

namespace firecast {

Model make_reference_model(InputSpec spec, std::uint64_t seed,
                           std::size_t filters, std::size_t kernel,
                           std::size_t pool_window, std::size_t hidden_units) {
  if (spec.height < kernel || spec.width < kernel) {
    throw DimensionError("input " + std::to_string(spec.height) + "x" +
                         std::to_string(spec.width) + " is smaller than the " +
                         std::to_string(kernel) + "x" + std::to_string(kernel) +
                         " kernel");
  }
  const std::size_t conv_h = spec.height - kernel + 1;
  const std::size_t conv_w = spec.width - kernel + 1;
  if (conv_h < pool_window || conv_w < pool_window) {
    throw DimensionError("conv output " + std::to_string(conv_h) + "x" +
                         std::to_string(conv_w) + " is smaller than the pooling window " +
                         std::to_string(pool_window));
  }
  const std::size_t pooled_h = (conv_h - pool_window) / pool_window + 1;
  const std::size_t pooled_w = (conv_w - pool_window) / pool_window + 1;
  const std::size_t flat = filters * pooled_h * pooled_w;

  Rng rng(seed);
  Model model;
  model.input_spec = spec;
  model.conv = ConvLayer::init(filters, spec.channels, kernel, rng);
  model.pool = PoolSpec{pool_window, pool_window};
  model.fc1 = DenseLayer::init(flat, hidden_units, Activation::Relu, rng);
  model.fc2 = DenseLayer::init(hidden_units, 1, Activation::Sigmoid, rng);
  return model;
}

std::array<Tensor*, 6> model_parameters(Model& model) {
  return {&model.conv.weights, &model.conv.bias, &model.fc1.weights,
          &model.fc1.bias,     &model.fc2.weights, &model.fc2.bias};
}

std::array<const Tensor*, 6> model_parameters(const Model& model) {
  return {&model.conv.weights, &model.conv.bias, &model.fc1.weights,
          &model.fc1.bias,     &model.fc2.weights, &model.fc2.bias};
}

ForwardTrace model_forward(const Model& model, const Tensor& image) {
  const Shape expected{model.input_spec.channels, model.input_spec.height,
                       model.input_spec.width};
  if (image.shape != expected) {
    throw DimensionError("image shape " + shape_str(image.shape) +
                         " does not match model input " + shape_str(expected));
  }
  ForwardTrace trace;
  trace.conv_out = conv2d_forward(image, model.conv);
  trace.pool = maxpool2d_forward(trace.conv_out, model.pool);
  trace.flat = Tensor({trace.pool.output.numel()}, trace.pool.output.data);
  trace.fc1 = dense_forward(trace.flat, model.fc1);
  trace.fc2 = dense_forward(trace.fc1.output, model.fc2);
  trace.prob = trace.fc2.output[0];
  return trace;
}

double model_predict(const Model& model, const Tensor& image) {
  return model_forward(model, image).prob;
}

ModelGrads model_backward(const Model& model, const Tensor& image,
                          const ForwardTrace& trace, double dloss_dprob) {
  const Tensor up2({1}, {dloss_dprob});
  DenseGrads g2 = dense_backward(trace.fc1.output, model.fc2, up2);
  DenseGrads g1 = dense_backward(trace.flat, model.fc1, g2.input);
  const Tensor pooled_grad(trace.pool.output.shape, std::move(g1.input.data));
  Tensor conv_grad =
      maxpool2d_backward(trace.pool.argmax, pooled_grad, trace.pool.input_shape);
  ConvGrads gc = conv2d_backward(image, model.conv, conv_grad);
  return {std::move(gc.weights), std::move(gc.bias),
          std::move(g1.weights), std::move(g1.bias),
          std::move(g2.weights), std::move(g2.bias)};
}

}  // namespace firecast
