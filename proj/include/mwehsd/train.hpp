#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mwehsd/example.hpp"
#include "mwehsd/model.hpp"

namespace mwehsd {

/// Optimizer and schedule settings. Adam with the usual moments.
struct Hyperparams {
  double learning_rate = 1e-3;
  std::size_t batch_size = 32;
  std::size_t max_epochs = 30;
  std::size_t patience = 5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-7;
};

struct EpochRecord {
  double loss = 0.0;  // mean training cross-entropy
  double val_macro_f1 = 0.0;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;  // 0-based
  double best_val_macro_f1 = 0.0;

  friend bool operator==(const TrainHistory&, const TrainHistory&) = default;
};

inline bool operator==(const EpochRecord& a, const EpochRecord& b) {
  return a.loss == b.loss && a.val_macro_f1 == b.val_macro_f1;
}

struct TrainResult {
  Model model;
  TrainHistory history;
};

/// Mini-batch Adam. Validation macro-F1 is measured after each epoch;
/// training stops once `patience` epochs pass without a strict improvement
/// and the best epoch's weights are returned. An empty validation set
/// falls back to monitoring the training set.
TrainResult train(Model model,
                  std::span<const ExampleFeatures> train_set,
                  std::span<const ExampleFeatures> validation_set,
                  const Hyperparams& hp,
                  std::uint64_t shuffle_seed);

std::vector<std::size_t> predict_labels(const Model& model, std::span<const ExampleFeatures> xs);

}  // namespace mwehsd
