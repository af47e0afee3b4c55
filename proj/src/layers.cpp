#include "mwehsd/layers.hpp"

#include <cmath>

#include "mwehsd/error.hpp"

namespace mwehsd {

namespace {

void expect_shape(const char* layer, const Tensor& t, const std::vector<std::size_t>& want) {
  if (t.shape() != want) {
    throw ShapeError(std::string(layer) + ": got shape " + shape_string(t.shape()) + ", expected " +
                     shape_string(want));
  }
}

void expect_rank2(const char* layer, const Tensor& t, std::size_t cols) {
  if (t.rank() != 2 || t.dim(1) != cols) {
    throw ShapeError(std::string(layer) + ": got shape " + shape_string(t.shape()) + ", expected [L, " +
                     std::to_string(cols) + "]");
  }
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

// ---- Conv1D ----

Conv1D Conv1D::zeros(std::size_t in, std::size_t out, std::size_t kernel) {
  return {Tensor({kernel, in, out}), Tensor({out})};
}

Tensor Conv1D::forward(const Tensor& x) const {
  const auto k = kernel(), in = in_channels(), out = out_channels();
  expect_rank2("conv1d", x, in);
  const auto len = x.dim(0);
  const auto pad = static_cast<std::ptrdiff_t>(k / 2);
  Tensor y({len, out});
  for (std::size_t t = 0; t < len; ++t) {
    auto yr = y.row(t);
    for (std::size_t o = 0; o < out; ++o) yr[o] = bias[o];
    for (std::size_t j = 0; j < k; ++j) {
      const auto src = static_cast<std::ptrdiff_t>(t + j) - pad;
      if (src < 0 || src >= static_cast<std::ptrdiff_t>(len)) continue;
      const auto xr = x.row(static_cast<std::size_t>(src));
      for (std::size_t c = 0; c < in; ++c) {
        const double xv = xr[c];
        if (xv == 0.0) continue;
        const double* w = weight.data() + (j * in + c) * out;
        for (std::size_t o = 0; o < out; ++o) yr[o] += xv * w[o];
      }
    }
  }
  return y;
}

Tensor Conv1D::backward(const Tensor& x, const Tensor& dy, Conv1D& grad) const {
  const auto k = kernel(), in = in_channels(), out = out_channels();
  expect_rank2("conv1d", x, in);
  const auto len = x.dim(0);
  expect_shape("conv1d backward", dy, {len, out});
  const auto pad = static_cast<std::ptrdiff_t>(k / 2);
  Tensor dx({len, in});
  for (std::size_t t = 0; t < len; ++t) {
    const auto g = dy.row(t);
    for (std::size_t o = 0; o < out; ++o) grad.bias[o] += g[o];
    for (std::size_t j = 0; j < k; ++j) {
      const auto src = static_cast<std::ptrdiff_t>(t + j) - pad;
      if (src < 0 || src >= static_cast<std::ptrdiff_t>(len)) continue;
      const auto s = static_cast<std::size_t>(src);
      const auto xr = x.row(s);
      auto dxr = dx.row(s);
      for (std::size_t c = 0; c < in; ++c) {
        const double* w = weight.data() + (j * in + c) * out;
        double* gw = grad.weight.data() + (j * in + c) * out;
        const double xv = xr[c];
        double acc = 0.0;
        for (std::size_t o = 0; o < out; ++o) {
          gw[o] += xv * g[o];
          acc += w[o] * g[o];
        }
        dxr[c] += acc;
      }
    }
  }
  return dx;
}

// ---- MaxPool1D ----

Tensor MaxPool1D::forward(const Tensor& x, std::vector<std::size_t>* argmax) const {
  if (x.rank() != 2) throw ShapeError("maxpool1d: expected rank-2 input, got " + shape_string(x.shape()));
  const auto len = x.dim(0) / width, ch = x.dim(1);
  Tensor y({len, ch});
  if (argmax) argmax->assign(len * ch, 0);
  for (std::size_t t = 0; t < len; ++t) {
    for (std::size_t c = 0; c < ch; ++c) {
      std::size_t best = t * width;
      for (std::size_t r = best + 1; r < (t + 1) * width; ++r) {
        if (x.at(r, c) > x.at(best, c)) best = r;
      }
      y.at(t, c) = x.at(best, c);
      if (argmax) (*argmax)[t * ch + c] = best;
    }
  }
  return y;
}

Tensor MaxPool1D::backward(const Tensor& dy, std::span<const std::size_t> argmax,
                           const std::vector<std::size_t>& input_shape) const {
  if (dy.size() != argmax.size()) throw ShapeError("maxpool1d backward: gradient/argmax size mismatch");
  Tensor dx(input_shape);
  const auto ch = input_shape.at(1);
  for (std::size_t i = 0; i < argmax.size(); ++i) dx.at(argmax[i], i % ch) += dy[i];
  return dx;
}

// ---- Dense ----

Dense Dense::zeros(std::size_t in, std::size_t out) { return {Tensor({in, out}), Tensor({out})}; }

Tensor Dense::forward(const Tensor& x) const {
  const auto in = in_features(), out = out_features();
  expect_shape("dense", x, {in});
  Tensor y({out});
  for (std::size_t o = 0; o < out; ++o) y[o] = bias[o];
  for (std::size_t i = 0; i < in; ++i) {
    const double xv = x[i];
    if (xv == 0.0) continue;
    const double* w = weight.data() + i * out;
    for (std::size_t o = 0; o < out; ++o) y[o] += xv * w[o];
  }
  return y;
}

Tensor Dense::backward(const Tensor& x, const Tensor& dy, Dense& grad) const {
  const auto in = in_features(), out = out_features();
  expect_shape("dense", x, {in});
  expect_shape("dense backward", dy, {out});
  Tensor dx({in});
  for (std::size_t o = 0; o < out; ++o) grad.bias[o] += dy[o];
  for (std::size_t i = 0; i < in; ++i) {
    const double* w = weight.data() + i * out;
    double* gw = grad.weight.data() + i * out;
    const double xv = x[i];
    double acc = 0.0;
    for (std::size_t o = 0; o < out; ++o) {
      gw[o] += xv * dy[o];
      acc += w[o] * dy[o];
    }
    dx[i] = acc;
  }
  return dx;
}

// ---- Lstm ----

Lstm Lstm::zeros(std::size_t in, std::size_t units) {
  return {Tensor({in, 4 * units}), Tensor({units, 4 * units}), Tensor({4 * units})};
}

Tensor Lstm::forward(const Tensor& x, std::size_t steps, Trace* trace) const {
  const auto in = in_features(), h = units(), g4 = 4 * h;
  expect_rank2("lstm", x, in);
  if (steps > x.dim(0)) {
    throw ShapeError("lstm: " + std::to_string(steps) + " steps requested on " + std::to_string(x.dim(0)) +
                     " rows");
  }
  std::vector<double> gates(steps * g4);
  std::vector<double> cells((steps + 1) * h, 0.0);
  std::vector<double> hidden((steps + 1) * h, 0.0);
  std::vector<double> z(g4);

  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t j = 0; j < g4; ++j) z[j] = bias[j];
    const auto xr = x.row(t);
    for (std::size_t i = 0; i < in; ++i) {
      const double xv = xr[i];
      if (xv == 0.0) continue;
      const double* w = input_weight.data() + i * g4;
      for (std::size_t j = 0; j < g4; ++j) z[j] += xv * w[j];
    }
    const double* hp = hidden.data() + t * h;
    for (std::size_t u = 0; u < h; ++u) {
      const double hv = hp[u];
      if (hv == 0.0) continue;
      const double* w = recurrent_weight.data() + u * g4;
      for (std::size_t j = 0; j < g4; ++j) z[j] += hv * w[j];
    }
    double* gt = gates.data() + t * g4;
    const double* cp = cells.data() + t * h;
    double* cn = cells.data() + (t + 1) * h;
    double* hn = hidden.data() + (t + 1) * h;
    for (std::size_t u = 0; u < h; ++u) {
      const double ig = sigmoid(z[u]);
      const double fg = sigmoid(z[h + u]);
      const double cg = std::tanh(z[2 * h + u]);
      const double og = sigmoid(z[3 * h + u]);
      gt[u] = ig;
      gt[h + u] = fg;
      gt[2 * h + u] = cg;
      gt[3 * h + u] = og;
      cn[u] = fg * cp[u] + ig * cg;
      hn[u] = og * std::tanh(cn[u]);
    }
  }

  Tensor out({h});
  for (std::size_t u = 0; u < h; ++u) out[u] = hidden[steps * h + u];
  if (trace) {
    trace->steps = steps;
    trace->gates = std::move(gates);
    trace->cells = std::move(cells);
    trace->hidden = std::move(hidden);
  }
  return out;
}

Tensor Lstm::backward(const Tensor& x, const Trace& trace, const Tensor& dh_final, Lstm& grad) const {
  const auto in = in_features(), h = units(), g4 = 4 * h;
  expect_rank2("lstm", x, in);
  expect_shape("lstm backward", dh_final, {h});
  Tensor dx(x.shape());
  std::vector<double> dh(dh_final.values().begin(), dh_final.values().end());
  std::vector<double> dc(h, 0.0);
  std::vector<double> dz(g4);

  for (std::size_t step = trace.steps; step-- > 0;) {
    const double* gt = trace.gates.data() + step * g4;
    const double* cp = trace.cells.data() + step * h;
    const double* cn = trace.cells.data() + (step + 1) * h;
    const double* hp = trace.hidden.data() + step * h;
    for (std::size_t u = 0; u < h; ++u) {
      const double ig = gt[u], fg = gt[h + u], cg = gt[2 * h + u], og = gt[3 * h + u];
      const double tc = std::tanh(cn[u]);
      const double dog = dh[u] * tc;
      const double dct = dc[u] + dh[u] * og * (1.0 - tc * tc);
      dz[u] = dct * cg * ig * (1.0 - ig);
      dz[h + u] = dct * cp[u] * fg * (1.0 - fg);
      dz[2 * h + u] = dct * ig * (1.0 - cg * cg);
      dz[3 * h + u] = dog * og * (1.0 - og);
      dc[u] = dct * fg;
    }
    for (std::size_t j = 0; j < g4; ++j) grad.bias[j] += dz[j];

    const auto xr = x.row(step);
    auto dxr = dx.row(step);
    for (std::size_t i = 0; i < in; ++i) {
      const double* w = input_weight.data() + i * g4;
      double* gw = grad.input_weight.data() + i * g4;
      const double xv = xr[i];
      double acc = 0.0;
      for (std::size_t j = 0; j < g4; ++j) {
        gw[j] += xv * dz[j];
        acc += w[j] * dz[j];
      }
      dxr[i] = acc;
    }
    for (std::size_t u = 0; u < h; ++u) {
      const double* w = recurrent_weight.data() + u * g4;
      double* gw = grad.recurrent_weight.data() + u * g4;
      const double hv = hp[u];
      double acc = 0.0;
      for (std::size_t j = 0; j < g4; ++j) {
        gw[j] += hv * dz[j];
        acc += w[j] * dz[j];
      }
      dh[u] = acc;
    }
  }
  return dx;
}

// ---- activations, loss, plumbing ----

Tensor relu(const Tensor& x) {
  Tensor y = x;
  for (auto& v : y.values()) v = v > 0.0 ? v : 0.0;
  return y;
}

Tensor relu_backward(const Tensor& pre_activation, const Tensor& dy) {
  if (pre_activation.shape() != dy.shape()) throw ShapeError("relu backward: shape mismatch");
  Tensor dx = dy;
  for (std::size_t i = 0; i < dx.size(); ++i) {
    if (!(pre_activation[i] > 0.0)) dx[i] = 0.0;
  }
  return dx;
}

Tensor softmax(const Tensor& logits) {
  if (logits.rank() != 1 || logits.empty()) throw ShapeError("softmax: expected a non-empty vector");
  double hi = logits[0];
  for (double v : logits.values()) hi = std::max(hi, v);
  Tensor p(logits.shape());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(logits[i] - hi);
    sum += p[i];
  }
  for (auto& v : p.values()) v /= sum;
  return p;
}

SoftmaxLoss softmax_cross_entropy(const Tensor& logits, std::size_t label) {
  if (label >= logits.size()) {
    throw ShapeError("softmax_cross_entropy: label " + std::to_string(label) + " out of range for " +
                     std::to_string(logits.size()) + " classes");
  }
  SoftmaxLoss out;
  double hi = logits[0];
  for (double v : logits.values()) hi = std::max(hi, v);
  double sum = 0.0;
  for (double v : logits.values()) sum += std::exp(v - hi);
  out.loss = std::log(sum) - (logits[label] - hi);
  out.probs = softmax(logits);
  out.dlogits = out.probs;
  out.dlogits[label] -= 1.0;
  return out;
}

Tensor concat(std::initializer_list<const Tensor*> parts) {
  std::size_t n = 0;
  for (const auto* p : parts) n += p->size();
  std::vector<double> data;
  data.reserve(n);
  for (const auto* p : parts) data.insert(data.end(), p->values().begin(), p->values().end());
  return Tensor({n}, std::move(data));
}

std::vector<Tensor> split(const Tensor& flat, std::initializer_list<std::vector<std::size_t>> shapes) {
  std::vector<Tensor> out;
  std::size_t offset = 0;
  for (const auto& shape : shapes) {
    const auto n = Tensor::element_count(shape);
    if (offset + n > flat.size()) throw ShapeError("split: shapes exceed " + std::to_string(flat.size()) + " values");
    out.emplace_back(shape, std::vector<double>(flat.values().begin() + static_cast<std::ptrdiff_t>(offset),
                                                flat.values().begin() + static_cast<std::ptrdiff_t>(offset + n)));
    offset += n;
  }
  if (offset != flat.size()) throw ShapeError("split: shapes cover " + std::to_string(offset) + " of " +
                                              std::to_string(flat.size()) + " values");
  return out;
}

}  // namespace mwehsd
