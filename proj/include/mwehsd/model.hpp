#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mwehsd/example.hpp"
#include "mwehsd/layers.hpp"

namespace mwehsd {

struct ModelConfig {
  std::size_t onehot_cols = 19;     // K + 1
  std::size_t max_tokens = 64;      // rows of the one-hot input
  std::size_t mwe_embed_dim = 400;  // E
  std::size_t max_mwe_tokens = 16;
  std::size_t sentence_dim = 512;   // S
  std::vector<std::size_t> conv_filters{32, 16, 8};
  std::size_t kernel = 3;
  std::size_t pool = 2;
  std::size_t lstm_units = 192;
  std::size_t dense_units = 256;
  std::size_t n_classes = 2;
  bool mwe_branches = true;  // false: sentence-vector baseline
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument on a zero size or n_classes < 2.
  void validate() const;
  /// Length of the flattened convolutional branch output.
  std::size_t conv_branch_size() const;
  std::size_t head_input_size() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Three-branch classifier:
///   A: one-hot categories -> (Conv1D + ReLU -> MaxPool) x N -> flatten
///   B: MWE member embeddings -> LSTM (final hidden state, masked by mwe_len)
///   C: sentence vector, passed through
///   head: concat -> Dense+ReLU -> Dense+ReLU -> Dense -> softmax
/// With mwe_branches off, only C feeds the head.
class Model {
 public:
  explicit Model(ModelConfig config);  // Glorot-uniform init from config.seed

  /// Same architecture with every parameter zero; used for gradient sums.
  static Model zeros_like(const Model& model);

  const ModelConfig& config() const noexcept { return config_; }

  std::vector<Conv1D> conv;
  Lstm lstm;
  Dense hidden1;
  Dense hidden2;
  Dense output;

  struct Trace {
    std::vector<Tensor> conv_in;        // input of each conv block
    std::vector<Tensor> conv_pre;       // conv output before ReLU
    std::vector<std::vector<std::size_t>> pool_argmax;
    std::vector<std::vector<std::size_t>> pool_in_shape;
    Tensor conv_out;                    // last pooled map
    Lstm::Trace lstm;
    Tensor lstm_out;
    Tensor head_in;
    Tensor hidden1_pre;
    Tensor hidden1_out;
    Tensor hidden2_pre;
    Tensor hidden2_out;
  };

  struct InputGrads {
    Tensor onehot;
    Tensor mwe_embeds;
    Tensor sentence_vec;
  };

  Tensor logits(const ExampleFeatures& x, Trace* trace = nullptr) const;
  Tensor probabilities(const ExampleFeatures& x) const;

  /// Accumulates dL/dparams into `grad` (a zeros_like model) and optionally
  /// writes dL/dinputs.
  void backward(const ExampleFeatures& x, const Trace& trace, const Tensor& dlogits,
                Model& grad, InputGrads* input_grads = nullptr) const;

  /// Visits every parameter tensor with a stable name, in a fixed order.
  void for_each_parameter(const std::function<void(const std::string&, Tensor&)>& fn);
  void for_each_parameter(const std::function<void(const std::string&, const Tensor&)>& fn) const;

  std::size_t parameter_count() const;

  /// Zeros every parameter of branches A and B.
  void zero_mwe_branches();

  friend bool operator==(const Model& a, const Model& b);

 private:
  void check_input(const ExampleFeatures& x) const;

  ModelConfig config_;
};

struct Prediction {
  std::size_t label = 0;
  std::vector<double> probs;
};

/// Index of the largest value; ties resolve to the lowest index.
std::size_t argmax(std::span<const double> values);

Prediction predict(const Model& model, const ExampleFeatures& x);

}  // namespace mwehsd
