#include "mwehsd/model.hpp"

#include <cmath>
#include <stdexcept>

#include "mwehsd/error.hpp"
#include "mwehsd/random.hpp"

namespace mwehsd {

namespace {

void glorot(Tensor& w, std::size_t fan_in, std::size_t fan_out, SplitMix64& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (auto& v : w.values()) v = rng.uniform(-limit, limit);
}

Tensor flatten(const Tensor& t) { return Tensor({t.size()}, t.storage()); }

}  // namespace

void ModelConfig::validate() const {
  auto positive = [](std::size_t v, const char* name) {
    if (v == 0) throw std::invalid_argument(std::string("model config: ") + name + " must be positive");
  };
  positive(sentence_dim, "sentence_dim");
  positive(dense_units, "dense_units");
  if (n_classes < 2) throw std::invalid_argument("model config: n_classes must be at least 2");
  if (!mwe_branches) return;
  positive(onehot_cols, "onehot_cols");
  positive(max_tokens, "max_tokens");
  positive(mwe_embed_dim, "mwe_embed_dim");
  positive(max_mwe_tokens, "max_mwe_tokens");
  positive(kernel, "kernel");
  positive(pool, "pool");
  positive(lstm_units, "lstm_units");
  if (conv_filters.empty()) throw std::invalid_argument("model config: conv_filters is empty");
  for (auto f : conv_filters) positive(f, "conv filter count");
  if (conv_branch_size() == 0) {
    throw std::invalid_argument("model config: max_tokens too short for " + std::to_string(conv_filters.size()) +
                                " pooling stages");
  }
}

std::size_t ModelConfig::conv_branch_size() const {
  if (!mwe_branches) return 0;
  std::size_t len = max_tokens;
  for (std::size_t i = 0; i < conv_filters.size(); ++i) len /= pool;
  return len * conv_filters.back();
}

std::size_t ModelConfig::head_input_size() const {
  return mwe_branches ? conv_branch_size() + lstm_units + sentence_dim : sentence_dim;
}

Model::Model(ModelConfig config) : config_(std::move(config)) {
  config_.validate();
  SplitMix64 rng(config_.seed);
  if (config_.mwe_branches) {
    std::size_t in = config_.onehot_cols;
    for (auto filters : config_.conv_filters) {
      auto layer = Conv1D::zeros(in, filters, config_.kernel);
      glorot(layer.weight, config_.kernel * in, config_.kernel * filters, rng);
      conv.push_back(std::move(layer));
      in = filters;
    }
    const auto h = config_.lstm_units;
    lstm = Lstm::zeros(config_.mwe_embed_dim, h);
    glorot(lstm.input_weight, config_.mwe_embed_dim, 4 * h, rng);
    glorot(lstm.recurrent_weight, h, 4 * h, rng);
    for (std::size_t u = 0; u < h; ++u) lstm.bias[h + u] = 1.0;  // forget gate
  }
  hidden1 = Dense::zeros(config_.head_input_size(), config_.dense_units);
  hidden2 = Dense::zeros(config_.dense_units, config_.dense_units);
  output = Dense::zeros(config_.dense_units, config_.n_classes);
  for (Dense* d : {&hidden1, &hidden2, &output}) glorot(d->weight, d->in_features(), d->out_features(), rng);
}

Model Model::zeros_like(const Model& model) {
  Model out = model;
  out.for_each_parameter([](const std::string&, Tensor& t) { t.fill(0.0); });
  return out;
}

void Model::for_each_parameter(const std::function<void(const std::string&, Tensor&)>& fn) {
  for (std::size_t i = 0; i < conv.size(); ++i) {
    fn("conv" + std::to_string(i) + ".weight", conv[i].weight);
    fn("conv" + std::to_string(i) + ".bias", conv[i].bias);
  }
  if (config_.mwe_branches) {
    fn("lstm.input_weight", lstm.input_weight);
    fn("lstm.recurrent_weight", lstm.recurrent_weight);
    fn("lstm.bias", lstm.bias);
  }
  fn("hidden1.weight", hidden1.weight);
  fn("hidden1.bias", hidden1.bias);
  fn("hidden2.weight", hidden2.weight);
  fn("hidden2.bias", hidden2.bias);
  fn("output.weight", output.weight);
  fn("output.bias", output.bias);
}

void Model::for_each_parameter(const std::function<void(const std::string&, const Tensor&)>& fn) const {
  const_cast<Model*>(this)->for_each_parameter(
      [&](const std::string& name, Tensor& t) { fn(name, static_cast<const Tensor&>(t)); });
}

std::size_t Model::parameter_count() const {
  std::size_t n = 0;
  for_each_parameter([&](const std::string&, const Tensor& t) { n += t.size(); });
  return n;
}

void Model::zero_mwe_branches() {
  for (auto& c : conv) {
    c.weight.fill(0.0);
    c.bias.fill(0.0);
  }
  lstm.input_weight.fill(0.0);
  lstm.recurrent_weight.fill(0.0);
  lstm.bias.fill(0.0);
}

bool operator==(const Model& a, const Model& b) {
  if (!(a.config_ == b.config_)) return false;
  std::vector<const Tensor*> ta, tb;
  a.for_each_parameter([&](const std::string&, const Tensor& t) { ta.push_back(&t); });
  b.for_each_parameter([&](const std::string&, const Tensor& t) { tb.push_back(&t); });
  if (ta.size() != tb.size()) return false;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (!(*ta[i] == *tb[i])) return false;
  }
  return true;
}

void Model::check_input(const ExampleFeatures& x) const {
  const auto& c = config_;
  if (x.sentence_vec.shape() != std::vector<std::size_t>{c.sentence_dim}) {
    throw ShapeError("model input sentence_vec: got " + shape_string(x.sentence_vec.shape()) + ", expected [" +
                     std::to_string(c.sentence_dim) + "]");
  }
  if (!c.mwe_branches) return;
  if (x.onehot.shape() != std::vector<std::size_t>{c.max_tokens, c.onehot_cols}) {
    throw ShapeError("model input onehot: got " + shape_string(x.onehot.shape()) + ", expected " +
                     shape_string({c.max_tokens, c.onehot_cols}));
  }
  if (x.mwe_embeds.shape() != std::vector<std::size_t>{c.max_mwe_tokens, c.mwe_embed_dim}) {
    throw ShapeError("model input mwe_embeds: got " + shape_string(x.mwe_embeds.shape()) + ", expected " +
                     shape_string({c.max_mwe_tokens, c.mwe_embed_dim}));
  }
  if (x.mwe_len > c.max_mwe_tokens) throw ShapeError("model input mwe_len exceeds max_mwe_tokens");
}

Tensor Model::logits(const ExampleFeatures& x, Trace* trace) const {
  check_input(x);
  Trace local;
  Trace& tr = trace ? *trace : local;
  const MaxPool1D pool{config_.pool};

  if (config_.mwe_branches) {
    tr.conv_in.clear();
    tr.conv_pre.clear();
    tr.pool_argmax.clear();
    tr.pool_in_shape.clear();
    Tensor a = x.onehot;
    for (const auto& layer : conv) {
      tr.conv_in.push_back(a);
      auto pre = layer.forward(a);
      auto act = relu(pre);
      tr.pool_in_shape.push_back(act.shape());
      tr.pool_argmax.emplace_back();
      a = pool.forward(act, &tr.pool_argmax.back());
      tr.conv_pre.push_back(std::move(pre));
    }
    tr.conv_out = std::move(a);
    tr.lstm_out = lstm.forward(x.mwe_embeds, x.mwe_len, &tr.lstm);
    const Tensor flat = flatten(tr.conv_out);
    tr.head_in = concat({&flat, &tr.lstm_out, &x.sentence_vec});
  } else {
    tr.head_in = x.sentence_vec;
  }
  tr.hidden1_pre = hidden1.forward(tr.head_in);
  tr.hidden1_out = relu(tr.hidden1_pre);
  tr.hidden2_pre = hidden2.forward(tr.hidden1_out);
  tr.hidden2_out = relu(tr.hidden2_pre);
  return output.forward(tr.hidden2_out);
}

Tensor Model::probabilities(const ExampleFeatures& x) const { return softmax(logits(x)); }

void Model::backward(const ExampleFeatures& x, const Trace& tr, const Tensor& dlogits,
                     Model& grad, InputGrads* input_grads) const {
  auto d = output.backward(tr.hidden2_out, dlogits, grad.output);
  d = hidden2.backward(tr.hidden1_out, relu_backward(tr.hidden2_pre, d), grad.hidden2);
  d = hidden1.backward(tr.head_in, relu_backward(tr.hidden1_pre, d), grad.hidden1);

  if (!config_.mwe_branches) {
    if (input_grads) input_grads->sentence_vec = std::move(d);
    return;
  }

  auto parts = split(d, {tr.conv_out.shape(), {config_.lstm_units}, {config_.sentence_dim}});
  const auto d_mwe = lstm.backward(x.mwe_embeds, tr.lstm, parts[1], grad.lstm);

  const MaxPool1D pool{config_.pool};
  Tensor da = std::move(parts[0]);
  for (std::size_t i = conv.size(); i-- > 0;) {
    const auto d_act = pool.backward(da, tr.pool_argmax[i], tr.pool_in_shape[i]);
    da = conv[i].backward(tr.conv_in[i], relu_backward(tr.conv_pre[i], d_act), grad.conv[i]);
  }

  if (input_grads) {
    input_grads->onehot = std::move(da);
    input_grads->mwe_embeds = d_mwe;
    input_grads->sentence_vec = std::move(parts[2]);
  }
}

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

Prediction predict(const Model& model, const ExampleFeatures& x) {
  Prediction p;
  const auto probs = model.probabilities(x);
  p.probs = probs.storage();
  p.label = argmax(p.probs);
  return p;
}

}  // namespace mwehsd
