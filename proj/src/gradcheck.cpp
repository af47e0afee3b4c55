#include "mwehsd/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "mwehsd/random.hpp"

namespace mwehsd {

namespace {

void randomize(Tensor& t, SplitMix64& rng, double scale = 1.0) {
  for (auto& v : t.values()) v = rng.uniform(-scale, scale);
}

double probe_loss(const Tensor& y, const Tensor& probe) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * probe[i];
  return s;
}

// Compares `analytic` against central differences of `loss` w.r.t. every
// element of `value`.
void compare(const std::string& name, Tensor& value, const Tensor& analytic, double eps,
             const std::function<double()>& loss, GradCheckResult& result) {
  for (std::size_t i = 0; i < value.size(); ++i) {
    const double saved = value[i];
    value[i] = saved + eps;
    const double up = loss();
    value[i] = saved - eps;
    const double down = loss();
    value[i] = saved;
    const double numeric = (up - down) / (2.0 * eps);
    const double err = relative_error(analytic[i], numeric);
    ++result.checked;
    if (err > result.max_rel_error || result.worst.empty()) {
      result.max_rel_error = std::max(err, result.max_rel_error);
      result.worst = name + "[" + std::to_string(i) + "]";
    }
  }
}

}  // namespace

double relative_error(double analytic, double numeric) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
  return std::abs(analytic - numeric) / denom;
}

GradCheckResult grad_check_conv1d(std::size_t length, std::size_t in, std::size_t out,
                                  std::size_t kernel, double eps, std::uint64_t seed) {
  SplitMix64 rng(seed);
  auto layer = Conv1D::zeros(in, out, kernel);
  randomize(layer.weight, rng);
  randomize(layer.bias, rng);
  Tensor x({length, in});
  randomize(x, rng);
  Tensor probe({length, out});
  randomize(probe, rng);

  auto grad = Conv1D::zeros(in, out, kernel);
  const auto dx = layer.backward(x, probe, grad);
  auto loss = [&] { return probe_loss(layer.forward(x), probe); };

  GradCheckResult r;
  compare("weight", layer.weight, grad.weight, eps, loss, r);
  compare("bias", layer.bias, grad.bias, eps, loss, r);
  compare("input", x, dx, eps, loss, r);
  return r;
}

GradCheckResult grad_check_dense(std::size_t in, std::size_t out, double eps, std::uint64_t seed) {
  SplitMix64 rng(seed);
  auto layer = Dense::zeros(in, out);
  randomize(layer.weight, rng);
  randomize(layer.bias, rng);
  Tensor x({in});
  randomize(x, rng);
  Tensor probe({out});
  randomize(probe, rng);

  auto grad = Dense::zeros(in, out);
  const auto dx = layer.backward(x, probe, grad);
  auto loss = [&] { return probe_loss(layer.forward(x), probe); };

  GradCheckResult r;
  compare("weight", layer.weight, grad.weight, eps, loss, r);
  compare("bias", layer.bias, grad.bias, eps, loss, r);
  compare("input", x, dx, eps, loss, r);
  return r;
}

GradCheckResult grad_check_lstm(std::size_t rows, std::size_t steps, std::size_t in,
                                std::size_t units, double eps, std::uint64_t seed) {
  SplitMix64 rng(seed);
  auto layer = Lstm::zeros(in, units);
  randomize(layer.input_weight, rng, 0.5);
  randomize(layer.recurrent_weight, rng, 0.5);
  randomize(layer.bias, rng, 0.5);
  Tensor x({rows, in});
  randomize(x, rng);
  Tensor probe({units});
  randomize(probe, rng);

  Lstm::Trace trace;
  layer.forward(x, steps, &trace);
  auto grad = Lstm::zeros(in, units);
  const auto dx = layer.backward(x, trace, probe, grad);
  auto loss = [&] { return probe_loss(layer.forward(x, steps), probe); };

  GradCheckResult r;
  compare("input_weight", layer.input_weight, grad.input_weight, eps, loss, r);
  compare("recurrent_weight", layer.recurrent_weight, grad.recurrent_weight, eps, loss, r);
  compare("bias", layer.bias, grad.bias, eps, loss, r);
  compare("input", x, dx, eps, loss, r);
  return r;
}

GradCheckResult grad_check_model(ModelConfig config, double eps, std::uint64_t seed) {
  config.seed = seed;
  Model model(config);
  SplitMix64 rng(seed ^ 0x5DEECE66DULL);
  // Non-zero biases so ReLU units sit at varied operating points.
  model.for_each_parameter([&](const std::string& name, Tensor& t) {
    if (name.ends_with(".bias")) randomize(t, rng, 0.1);
  });

  ExampleFeatures x;
  // Dense input: one-hot and zero rows produce pooling ties, where the map has a kink.
  x.onehot = Tensor({config.max_tokens, config.onehot_cols});
  randomize(x.onehot, rng);
  x.mwe_embeds = Tensor({config.max_mwe_tokens, config.mwe_embed_dim});
  x.mwe_len = 1 + rng.below(config.max_mwe_tokens);
  for (std::size_t t = 0; t < x.mwe_len; ++t) {
    for (auto& v : x.mwe_embeds.row(t)) v = rng.uniform(-1.0, 1.0);
  }
  x.sentence_vec = Tensor({config.sentence_dim});
  randomize(x.sentence_vec, rng);
  const auto label = static_cast<std::size_t>(rng.below(config.n_classes));

  Model::Trace trace;
  const auto sce = softmax_cross_entropy(model.logits(x, &trace), label);
  Model grad = Model::zeros_like(model);
  Model::InputGrads dinput;
  model.backward(x, trace, sce.dlogits, grad, &dinput);

  auto loss = [&] { return softmax_cross_entropy(model.logits(x), label).loss; };

  std::vector<std::pair<std::string, Tensor*>> analytic;
  grad.for_each_parameter([&](const std::string& name, Tensor& t) { analytic.emplace_back(name, &t); });
  std::size_t k = 0;
  GradCheckResult r;
  model.for_each_parameter([&](const std::string& name, Tensor& t) {
    compare(name, t, *analytic[k++].second, eps, loss, r);
  });
  compare("sentence_vec", x.sentence_vec, dinput.sentence_vec, eps, loss, r);
  if (config.mwe_branches) {
    compare("mwe_embeds", x.mwe_embeds, dinput.mwe_embeds, eps, loss, r);
    compare("onehot", x.onehot, dinput.onehot, eps, loss, r);
  }
  return r;
}

}  // namespace mwehsd
