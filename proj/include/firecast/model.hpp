#pragma once

#include <array>
#include <cstdint>

#include "firecast/layers.hpp"

namespace firecast {

struct InputSpec {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;
};

// Fixed five-layer stack: conv -> maxpool -> flatten -> dense(relu) ->
// dense(sigmoid, 1 unit). The final output is a fire probability.
struct Model {
  InputSpec input_spec;
  ConvLayer conv;
  PoolSpec pool;
  DenseLayer fc1;
  DenseLayer fc2;
};

// Reference architecture: 8 conv filters of 3x3, 2x2 pooling, 128 hidden
// units. Weight initialization is seed-deterministic.
Model make_reference_model(InputSpec spec, std::uint64_t seed,
                           std::size_t filters = 8, std::size_t kernel = 3,
                           std::size_t pool_window = 2,
                           std::size_t hidden_units = 128);

// The six parameter tensors in update order: conv w/b, fc1 w/b, fc2 w/b.
std::array<Tensor*, 6> model_parameters(Model& model);
std::array<const Tensor*, 6> model_parameters(const Model& model);

// Everything the backward pass needs from one forward evaluation.
struct ForwardTrace {
  Tensor conv_out;
  PoolResult pool;
  Tensor flat;
  DenseForward fc1;
  DenseForward fc2;
  double prob = 0.0;
};

ForwardTrace model_forward(const Model& model, const Tensor& image);

// Probability in (0,1) that the image shows fire. image is [C,H,W] and must
// match model.input_spec.
double model_predict(const Model& model, const Tensor& image);

// Parameter gradients in the same order as model_parameters.
struct ModelGrads {
  Tensor conv_w, conv_b, fc1_w, fc1_b, fc2_w, fc2_b;

  std::array<Tensor*, 6> list() { return {&conv_w, &conv_b, &fc1_w, &fc1_b, &fc2_w, &fc2_b}; }
};

// dloss_dprob is dL/dp at the sigmoid output.
ModelGrads model_backward(const Model& model, const Tensor& image,
                          const ForwardTrace& trace, double dloss_dprob);

}  // namespace firecast
