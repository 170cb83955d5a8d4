#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "firecast/activation.hpp"
#include "firecast/rng.hpp"
#include "firecast/tensor.hpp"

namespace firecast {

// 2-D convolution bank: weights [filters, in_channels, k, k], bias [filters].
struct ConvLayer {
  std::size_t filter_count = 0;
  std::size_t kernel_size = 0;
  std::size_t in_channels = 0;
  Tensor weights;
  Tensor bias;

  // Glorot-uniform weights, zero bias.
  static ConvLayer init(std::size_t filters, std::size_t in_channels,
                        std::size_t kernel, Rng& rng);
};

struct ConvGrads {
  Tensor input;
  Tensor weights;
  Tensor bias;
};

// Valid padding, stride 1, cross-correlation orientation (no kernel flip).
// input [C,H,W] -> output [F, H-k+1, W-k+1].
Tensor conv2d_forward(const Tensor& input, const ConvLayer& layer);

// Exact partial derivatives of conv2d_forward; upstream matches its output.
ConvGrads conv2d_backward(const Tensor& input, const ConvLayer& layer,
                          const Tensor& upstream);

// Square max-pooling window; stride 0 means "same as window".
struct PoolSpec {
  std::size_t window = 2;
  std::size_t stride = 0;

  std::size_t effective_stride() const { return stride == 0 ? window : stride; }
};

// argmax holds, per pooled element, the flat index of the winning input
// position (first in row-major order on ties).
struct PoolResult {
  Tensor output;
  std::vector<std::size_t> argmax;
  Shape input_shape;
};

// input [F,H,W]; trailing rows/columns that do not fill a window are dropped.
PoolResult maxpool2d_forward(const Tensor& input, const PoolSpec& spec);

// Routes upstream gradient to the recorded argmax positions, zero elsewhere.
Tensor maxpool2d_backward(const std::vector<std::size_t>& argmax,
                          const Tensor& upstream, const Shape& input_shape);

// Fully connected layer: weights [out, in], bias [out].
struct DenseLayer {
  std::size_t in_units = 0;
  std::size_t out_units = 0;
  Tensor weights;
  Tensor bias;
  Activation activation = Activation::Relu;

  static DenseLayer init(std::size_t in_units, std::size_t out_units,
                         Activation activation, Rng& rng);
};

struct DenseForward {
  Tensor pre_activation;  // z = W x + b
  Tensor output;          // activation(z)
};

DenseForward dense_forward(const Tensor& input, const DenseLayer& layer);

struct DenseGrads {
  Tensor input;
  Tensor weights;
  Tensor bias;
};

// Chain rule through the activation and the affine map; upstream is dL/doutput.
DenseGrads dense_backward(const Tensor& input, const DenseLayer& layer,
                          const Tensor& upstream);

}  // namespace firecast
