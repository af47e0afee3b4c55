#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "mwehsd/tensor.hpp"

namespace mwehsd {

// Layers hold parameters only. Forward passes write whatever backward needs
// into caller-owned traces, so a const layer can be evaluated concurrently.
// Backward accumulates parameter gradients into a same-shaped layer object.

/// 1-D convolution, stride 1, "same" zero padding. Input [L, in] -> [L, out].
struct Conv1D {
  Tensor weight;  // [kernel, in, out]
  Tensor bias;    // [out]

  static Conv1D zeros(std::size_t in, std::size_t out, std::size_t kernel);

  std::size_t kernel() const { return weight.dim(0); }
  std::size_t in_channels() const { return weight.dim(1); }
  std::size_t out_channels() const { return weight.dim(2); }

  Tensor forward(const Tensor& x) const;
  Tensor backward(const Tensor& x, const Tensor& dy, Conv1D& grad) const;
};

/// Non-overlapping max pooling along the time axis, floor semantics.
/// Ties go to the earliest row.
struct MaxPool1D {
  std::size_t width = 2;

  Tensor forward(const Tensor& x, std::vector<std::size_t>* argmax = nullptr) const;
  Tensor backward(const Tensor& dy, std::span<const std::size_t> argmax,
                  const std::vector<std::size_t>& input_shape) const;
};

/// Affine map on a vector: [in] -> [out].
struct Dense {
  Tensor weight;  // [in, out]
  Tensor bias;    // [out]

  static Dense zeros(std::size_t in, std::size_t out);

  std::size_t in_features() const { return weight.dim(0); }
  std::size_t out_features() const { return weight.dim(1); }

  Tensor forward(const Tensor& x) const;
  Tensor backward(const Tensor& x, const Tensor& dy, Dense& grad) const;
};

/// Single-layer LSTM returning the final hidden state. Gate order in the
/// packed weights is input, forget, cell, output.
struct Lstm {
  Tensor input_weight;      // [in, 4 * units]
  Tensor recurrent_weight;  // [units, 4 * units]
  Tensor bias;              // [4 * units]

  struct Trace {
    std::size_t steps = 0;
    std::vector<double> gates;   // steps x 4 * units, post-activation
    std::vector<double> cells;   // (steps + 1) x units, row 0 is the initial state
    std::vector<double> hidden;  // (steps + 1) x units
  };

  static Lstm zeros(std::size_t in, std::size_t units);

  std::size_t in_features() const { return input_weight.dim(0); }
  std::size_t units() const { return recurrent_weight.dim(0); }

  /// Runs rows [0, steps) of x ([T, in], steps <= T). steps == 0 yields zeros.
  Tensor forward(const Tensor& x, std::size_t steps, Trace* trace = nullptr) const;
  /// Gradient w.r.t. x (rows >= steps stay zero) given dL/dh_final.
  Tensor backward(const Tensor& x, const Trace& trace, const Tensor& dh_final, Lstm& grad) const;
};

Tensor relu(const Tensor& x);
Tensor relu_backward(const Tensor& pre_activation, const Tensor& dy);

Tensor softmax(const Tensor& logits);

struct SoftmaxLoss {
  Tensor probs;
  double loss = 0.0;
  Tensor dlogits;
};

SoftmaxLoss softmax_cross_entropy(const Tensor& logits, std::size_t label);

/// Flattens and joins the inputs into one vector.
Tensor concat(std::initializer_list<const Tensor*> parts);
/// Inverse of concat for gradients: slices `flat` back into the given shapes.
std::vector<Tensor> split(const Tensor& flat, std::initializer_list<std::vector<std::size_t>> shapes);

}  // namespace mwehsd
