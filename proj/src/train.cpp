#include "firecast/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "firecast/errors.hpp"
#include "firecast/loss.hpp"
#include "firecast/rng.hpp"

namespace firecast {

namespace {

bool classified_fire(double prob) { return prob >= 0.5; }

void accumulate(Tensor& acc, const Tensor& grad) {
  for (std::size_t i = 0; i < acc.numel(); ++i) acc[i] += grad[i];
}

}  // namespace

Metrics train_epoch(Model& model, const Dataset& data, const TrainConfig& cfg,
                    std::size_t epoch_index) {
  if (data.empty()) {
    throw InputError("training dataset is empty");
  }
  if (!(cfg.learning_rate >= 0.0)) {
    throw DomainError("learning rate must be nonnegative, got " +
                      std::to_string(cfg.learning_rate));
  }
  if (cfg.batch_size == 0) {
    throw DomainError("batch size must be positive");
  }
  const std::size_t n = data.size();
  const std::size_t batch = std::min(cfg.batch_size, n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(mix_seed(cfg.seed, epoch_index));
  rng.shuffle(order);

  double loss_sum = 0.0;
  std::size_t correct = 0;

  std::size_t batch_index = 0;
  for (std::size_t begin = 0; begin < n; begin += batch, ++batch_index) {
    const std::size_t end = std::min(begin + batch, n);

    ModelGrads acc{Tensor(model.conv.weights.shape), Tensor(model.conv.bias.shape),
                   Tensor(model.fc1.weights.shape),  Tensor(model.fc1.bias.shape),
                   Tensor(model.fc2.weights.shape),  Tensor(model.fc2.bias.shape)};

    for (std::size_t s = begin; s < end; ++s) {
      const LabeledImage& sample = data[order[s]];
      ForwardTrace trace = model_forward(model, sample.image);
      if (!std::isfinite(trace.prob)) {
        throw NumericError("training diverged at batch " +
                           std::to_string(batch_index) +
                           ": non-finite prediction");
      }
      const BceResult result = bce(sample.label, trace.prob);
      if (!std::isfinite(result.loss)) {
        throw NumericError("training diverged at batch " +
                           std::to_string(batch_index) + ": non-finite loss");
      }
      loss_sum += result.loss;
      correct += classified_fire(trace.prob) == (sample.label == 1) ? 1 : 0;

      ModelGrads grads = model_backward(model, sample.image, trace, result.dloss_dp);
      auto acc_list = acc.list();
      auto grad_list = grads.list();
      for (std::size_t i = 0; i < acc_list.size(); ++i) {
        accumulate(*acc_list[i], *grad_list[i]);
      }
    }

    const double step = cfg.learning_rate / static_cast<double>(end - begin);
    auto params = model_parameters(model);
    auto acc_list = acc.list();
    for (std::size_t i = 0; i < params.size(); ++i) {
      Tensor& p = *params[i];
      const Tensor& g = *acc_list[i];
      for (std::size_t e = 0; e < p.numel(); ++e) p[e] -= step * g[e];
    }
  }

  return {loss_sum / static_cast<double>(n),
          static_cast<double>(correct) / static_cast<double>(n)};
}

std::vector<Metrics> train(Model& model, const Dataset& data,
                           const TrainConfig& cfg, const EpochCallback& on_epoch) {
  std::vector<Metrics> history;
  history.reserve(cfg.epochs);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    Metrics metrics = train_epoch(model, data, cfg, epoch);
    history.push_back(metrics);
    if (on_epoch) on_epoch(epoch + 1, metrics);
  }
  return history;
}

Metrics evaluate(const Model& model, const Dataset& data) {
  if (data.empty()) {
    throw InputError("evaluation dataset is empty");
  }
  double loss_sum = 0.0;
  std::size_t correct = 0;
  for (const LabeledImage& sample : data) {
    const double prob = model_predict(model, sample.image);
    if (!std::isfinite(prob)) {
      throw NumericError("non-finite prediction during evaluation");
    }
    loss_sum += bce(sample.label, prob).loss;
    correct += classified_fire(prob) == (sample.label == 1) ? 1 : 0;
  }
  return {loss_sum / static_cast<double>(data.size()),
          static_cast<double>(correct) / static_cast<double>(data.size())};
}

}  // namespace firecast
