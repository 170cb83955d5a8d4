#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "firecast/model.hpp"

namespace firecast {

struct TrainConfig {
  double learning_rate = 0.01;
  std::size_t epochs = 20;
  std::size_t batch_size = 16;
  std::uint64_t seed = 0;
};

struct Metrics {
  double loss = 0.0;      // mean per-sample BCE
  double accuracy = 0.0;  // correct / total
};

struct LabeledImage {
  Tensor image;  // [C,H,W], values normalized to [0,1]
  int label = 0; // 1 = fire
};

using Dataset = std::vector<LabeledImage>;

// One pass of mini-batch SGD: w <- w - lr * dL/dw, gradients averaged per
// batch. Shuffling is driven solely by cfg.seed (and the epoch index, so a
// multi-epoch run reshuffles deterministically). Returns mean loss and
// accuracy over the epoch, measured at the weights each sample was seen
// with. Throws NumericError naming the batch index if the loss goes
// non-finite.
Metrics train_epoch(Model& model, const Dataset& data, const TrainConfig& cfg,
                    std::size_t epoch_index = 0);

// cfg.epochs passes of train_epoch; on_epoch (if set) observes 1-based epoch
// numbers and their metrics.
using EpochCallback = std::function<void(std::size_t, const Metrics&)>;
std::vector<Metrics> train(Model& model, const Dataset& data,
                           const TrainConfig& cfg,
                           const EpochCallback& on_epoch = {});

// Mean BCE and accuracy at the current weights. A probability of exactly
// 0.5 classifies as fire.
Metrics evaluate(const Model& model, const Dataset& data);

}  // namespace firecast
