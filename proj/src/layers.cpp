#include "firecast/layers.hpp"

#include <cmath>
#include <string>

#include "firecast/errors.hpp"

namespace firecast {

namespace {

void require_rank3(const Tensor& t, const char* what) {
  if (t.rank() != 3) {
    throw DimensionError(std::string(what) + " must be rank 3 [C,H,W], got shape " +
                         shape_str(t.shape));
  }
}

}  // namespace

ConvLayer ConvLayer::init(std::size_t filters, std::size_t in_channels,
                          std::size_t kernel, Rng& rng) {
  ConvLayer layer;
  layer.filter_count = filters;
  layer.kernel_size = kernel;
  layer.in_channels = in_channels;
  layer.weights = Tensor({filters, in_channels, kernel, kernel});
  layer.bias = Tensor({filters});
  const double fan_in = static_cast<double>(in_channels * kernel * kernel);
  const double fan_out = static_cast<double>(filters * kernel * kernel);
  const double s = std::sqrt(6.0 / (fan_in + fan_out));
  for (double& w : layer.weights.data) w = rng.uniform(-s, s);
  return layer;
}

Tensor conv2d_forward(const Tensor& input, const ConvLayer& layer) {
  require_rank3(input, "conv2d input");
  const std::size_t channels = input.shape[0];
  const std::size_t height = input.shape[1];
  const std::size_t width = input.shape[2];
  const std::size_t k = layer.kernel_size;
  if (channels != layer.in_channels) {
    throw DimensionError("conv2d channel axis mismatch: input has " +
                         std::to_string(channels) + " channels, layer expects " +
                         std::to_string(layer.in_channels));
  }
  if (height < k || width < k) {
    throw DimensionError("conv2d kernel " + std::to_string(k) + "x" + std::to_string(k) +
                         " exceeds input extent " + std::to_string(height) + "x" +
                         std::to_string(width));
  }
  const std::size_t out_h = height - k + 1;
  const std::size_t out_w = width - k + 1;
  const std::size_t filters = layer.filter_count;
  Tensor out({filters, out_h, out_w});

  const double* in = input.data.data();
  const double* w = layer.weights.data.data();
  double* o = out.data.data();
  for (std::size_t f = 0; f < filters; ++f) {
    const double b = layer.bias[f];
    for (std::size_t y = 0; y < out_h; ++y) {
      for (std::size_t x = 0; x < out_w; ++x) {
        double acc = b;
        for (std::size_t c = 0; c < channels; ++c) {
          const double* wf = w + ((f * channels + c) * k) * k;
          const double* row = in + (c * height + y) * width + x;
          for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
              acc += wf[i * k + j] * row[i * width + j];
            }
          }
        }
        o[(f * out_h + y) * out_w + x] = acc;
      }
    }
  }
  return out;
}

ConvGrads conv2d_backward(const Tensor& input, const ConvLayer& layer,
                          const Tensor& upstream) {
  require_rank3(input, "conv2d input");
  const std::size_t channels = input.shape[0];
  const std::size_t height = input.shape[1];
  const std::size_t width = input.shape[2];
  const std::size_t k = layer.kernel_size;
  if (channels != layer.in_channels) {
    throw DimensionError("conv2d channel axis mismatch: input has " +
                         std::to_string(channels) + " channels, layer expects " +
                         std::to_string(layer.in_channels));
  }
  const Shape expected{layer.filter_count, height - k + 1, width - k + 1};
  if (upstream.shape != expected) {
    throw DimensionError("conv2d upstream gradient shape " + shape_str(upstream.shape) +
                         " does not match forward output " + shape_str(expected));
  }
  const std::size_t out_h = expected[1];
  const std::size_t out_w = expected[2];

  ConvGrads grads{Tensor(input.shape), Tensor(layer.weights.shape), Tensor(layer.bias.shape)};
  const double* in = input.data.data();
  const double* w = layer.weights.data.data();
  const double* up = upstream.data.data();
  double* gin = grads.input.data.data();
  double* gw = grads.weights.data.data();

  for (std::size_t f = 0; f < layer.filter_count; ++f) {
    double bias_acc = 0.0;
    for (std::size_t y = 0; y < out_h; ++y) {
      for (std::size_t x = 0; x < out_w; ++x) {
        const double g = up[(f * out_h + y) * out_w + x];
        bias_acc += g;
        if (g == 0.0) continue;
        for (std::size_t c = 0; c < channels; ++c) {
          const double* wf = w + ((f * channels + c) * k) * k;
          double* gwf = gw + ((f * channels + c) * k) * k;
          const double* row = in + (c * height + y) * width + x;
          double* grow = gin + (c * height + y) * width + x;
          for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
              gwf[i * k + j] += g * row[i * width + j];
              grow[i * width + j] += g * wf[i * k + j];
            }
          }
        }
      }
    }
    grads.bias[f] = bias_acc;
  }
  return grads;
}

PoolResult maxpool2d_forward(const Tensor& input, const PoolSpec& spec) {
  require_rank3(input, "maxpool input");
  const std::size_t channels = input.shape[0];
  const std::size_t height = input.shape[1];
  const std::size_t width = input.shape[2];
  const std::size_t win = spec.window;
  const std::size_t stride = spec.effective_stride();
  if (win == 0 || stride == 0) {
    throw DimensionError("maxpool window and stride must be positive");
  }
  if (height < win || width < win) {
    throw DimensionError("maxpool window " + std::to_string(win) +
                         " exceeds input extent " + std::to_string(height) + "x" +
                         std::to_string(width));
  }
  // Trailing rows/columns that do not fill a window are dropped.
  const std::size_t out_h = (height - win) / stride + 1;
  const std::size_t out_w = (width - win) / stride + 1;

  PoolResult result{Tensor({channels, out_h, out_w}), {}, input.shape};
  result.argmax.resize(result.output.numel());

  const double* in = input.data.data();
  for (std::size_t c = 0; c < channels; ++c) {
    for (std::size_t oy = 0; oy < out_h; ++oy) {
      for (std::size_t ox = 0; ox < out_w; ++ox) {
        const std::size_t y0 = oy * stride;
        const std::size_t x0 = ox * stride;
        std::size_t best_idx = (c * height + y0) * width + x0;
        double best = in[best_idx];
        for (std::size_t i = 0; i < win; ++i) {
          for (std::size_t j = 0; j < win; ++j) {
            const std::size_t idx = (c * height + y0 + i) * width + x0 + j;
            // Strict comparison keeps the first maximum in row-major order.
            if (in[idx] > best) {
              best = in[idx];
              best_idx = idx;
            }
          }
        }
        const std::size_t out_idx = (c * out_h + oy) * out_w + ox;
        result.output[out_idx] = best;
        result.argmax[out_idx] = best_idx;
      }
    }
  }
  return result;
}

Tensor maxpool2d_backward(const std::vector<std::size_t>& argmax,
                          const Tensor& upstream, const Shape& input_shape) {
  if (input_shape.size() != 3) {
    throw DimensionError("maxpool input shape must be rank 3, got " +
                         shape_str(input_shape));
  }
  if (argmax.size() != upstream.numel()) {
    throw DimensionError("maxpool argmax map has " + std::to_string(argmax.size()) +
                         " entries but upstream gradient has " +
                         std::to_string(upstream.numel()));
  }
  Tensor grad(input_shape);
  const std::size_t limit = grad.numel();
  for (std::size_t t = 0; t < argmax.size(); ++t) {
    if (argmax[t] >= limit) {
      throw DimensionError("stale maxpool argmax map: index " +
                           std::to_string(argmax[t]) + " outside input " +
                           shape_str(input_shape));
    }
    grad[argmax[t]] += upstream[t];
  }
  return grad;
}

DenseLayer DenseLayer::init(std::size_t in_units, std::size_t out_units,
                            Activation activation, Rng& rng) {
  DenseLayer layer;
  layer.in_units = in_units;
  layer.out_units = out_units;
  layer.activation = activation;
  layer.weights = Tensor({out_units, in_units});
  layer.bias = Tensor({out_units});
  const double s = std::sqrt(6.0 / (static_cast<double>(in_units) + out_units));
  for (double& w : layer.weights.data) w = rng.uniform(-s, s);
  return layer;
}

namespace {

void require_dense_input(const Tensor& input, const DenseLayer& layer) {
  if (input.rank() != 1 || input.numel() != layer.in_units) {
    throw DimensionError("dense input length " + std::to_string(input.numel()) +
                         " (shape " + shape_str(input.shape) + ") does not match " +
                         std::to_string(layer.in_units) + " input units");
  }
}

}  // namespace

DenseForward dense_forward(const Tensor& input, const DenseLayer& layer) {
  require_dense_input(input, layer);
  DenseForward fwd{Tensor({layer.out_units}), Tensor({layer.out_units})};
  const double* w = layer.weights.data.data();
  const double* x = input.data.data();
  for (std::size_t o = 0; o < layer.out_units; ++o) {
    const double* row = w + o * layer.in_units;
    double z = layer.bias[o];
    for (std::size_t i = 0; i < layer.in_units; ++i) z += row[i] * x[i];
    fwd.pre_activation[o] = z;
    fwd.output[o] = activation_apply(z, layer.activation).value;
  }
  return fwd;
}

DenseGrads dense_backward(const Tensor& input, const DenseLayer& layer,
                          const Tensor& upstream) {
  require_dense_input(input, layer);
  if (upstream.rank() != 1 || upstream.numel() != layer.out_units) {
    throw DimensionError("dense upstream gradient length " +
                         std::to_string(upstream.numel()) + " does not match " +
                         std::to_string(layer.out_units) + " output units");
  }
  DenseGrads grads{Tensor(input.shape), Tensor(layer.weights.shape), Tensor(layer.bias.shape)};
  const double* w = layer.weights.data.data();
  const double* x = input.data.data();
  double* gx = grads.input.data.data();
  double* gw = grads.weights.data.data();
  for (std::size_t o = 0; o < layer.out_units; ++o) {
    double z = layer.bias[o];
    const double* row = w + o * layer.in_units;
    for (std::size_t i = 0; i < layer.in_units; ++i) z += row[i] * x[i];
    const double dz = upstream[o] * activation_apply(z, layer.activation).derivative;
    grads.bias[o] = dz;
    double* gwrow = gw + o * layer.in_units;
    if (dz != 0.0) {
      for (std::size_t i = 0; i < layer.in_units; ++i) {
        gwrow[i] = dz * x[i];
        gx[i] += dz * row[i];
      }
    }
  }
  return grads;
}

}  // namespace firecast
