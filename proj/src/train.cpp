#include "mwehsd/train.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mwehsd/metrics.hpp"
#include "mwehsd/random.hpp"

namespace mwehsd {

namespace {

std::vector<Tensor*> parameter_list(Model& model) {
  std::vector<Tensor*> out;
  model.for_each_parameter([&](const std::string&, Tensor& t) { out.push_back(&t); });
  return out;
}

double monitored_macro_f1(const Model& model, std::span<const ExampleFeatures> xs) {
  std::vector<std::size_t> truth;
  truth.reserve(xs.size());
  for (const auto& x : xs) truth.push_back(static_cast<std::size_t>(x.label));
  const auto pred = predict_labels(model, xs);
  return macro_f1(confusion_matrix(truth, pred, model.config().n_classes));
}

}  // namespace

std::vector<std::size_t> predict_labels(const Model& model, std::span<const ExampleFeatures> xs) {
  std::vector<std::size_t> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(predict(model, x).label);
  return out;
}

TrainResult train(Model model,
                  std::span<const ExampleFeatures> train_set,
                  std::span<const ExampleFeatures> validation_set,
                  const Hyperparams& hp,
                  std::uint64_t shuffle_seed) {
  if (train_set.empty()) throw std::invalid_argument("train: empty training set");
  if (hp.batch_size == 0) throw std::invalid_argument("train: batch_size must be positive");
  const auto n_classes = model.config().n_classes;
  for (const auto& x : train_set) {
    if (x.label < 0 || static_cast<std::size_t>(x.label) >= n_classes) {
      throw std::invalid_argument("train: label " + std::to_string(x.label) + " of '" + x.id +
                                  "' out of range");
    }
  }
  const auto monitored = validation_set.empty() ? train_set : validation_set;

  Model grad = Model::zeros_like(model);
  auto params = parameter_list(model);
  auto grads = parameter_list(grad);
  std::vector<Tensor> m1, m2;
  for (auto* p : params) {
    m1.emplace_back(p->shape());
    m2.emplace_back(p->shape());
  }

  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(shuffle_seed);

  TrainResult result{model, {}};
  double best = -1.0;
  std::size_t since_best = 0;
  std::size_t step = 0;
  Model::Trace trace;

  for (std::size_t epoch = 0; epoch < hp.max_epochs; ++epoch) {
    deterministic_shuffle(std::span<std::size_t>(order), rng);
    double loss_sum = 0.0;

    for (std::size_t start = 0; start < order.size(); start += hp.batch_size) {
      const auto end = std::min(order.size(), start + hp.batch_size);
      for (auto* g : grads) g->fill(0.0);
      for (auto i = start; i < end; ++i) {
        const auto& x = train_set[order[i]];
        const auto logits = model.logits(x, &trace);
        const auto sce = softmax_cross_entropy(logits, static_cast<std::size_t>(x.label));
        loss_sum += sce.loss;
        model.backward(x, trace, sce.dlogits, grad);
      }

      ++step;
      const double scale = 1.0 / static_cast<double>(end - start);
      const double c1 = 1.0 - std::pow(hp.beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(hp.beta2, static_cast<double>(step));
      for (std::size_t k = 0; k < params.size(); ++k) {
        auto& p = *params[k];
        const auto& g = *grads[k];
        for (std::size_t i = 0; i < p.size(); ++i) {
          const double gi = g[i] * scale;
          m1[k][i] = hp.beta1 * m1[k][i] + (1.0 - hp.beta1) * gi;
          m2[k][i] = hp.beta2 * m2[k][i] + (1.0 - hp.beta2) * gi * gi;
          p[i] -= hp.learning_rate * (m1[k][i] / c1) / (std::sqrt(m2[k][i] / c2) + hp.epsilon);
        }
      }
    }

    const double f1 = monitored_macro_f1(model, monitored);
    result.history.epochs.push_back({loss_sum / static_cast<double>(order.size()), f1});
    if (f1 > best) {
      best = f1;
      since_best = 0;
      result.model = model;
      result.history.best_epoch = epoch;
      result.history.best_val_macro_f1 = f1;
    } else {
      ++since_best;
    }
    if (since_best >= hp.patience) break;
  }
  return result;
}

}  // namespace mwehsd
