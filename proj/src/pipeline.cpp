#include "mwehsd/pipeline.hpp"

#include <cmath>
#include <stdexcept>

#include "mwehsd/error.hpp"
#include "mwehsd/random.hpp"

namespace mwehsd {

CorpusSplit split_corpus(std::span<const RawTweet> corpus, const SplitSpec& spec, std::uint64_t seed) {
  const auto n = corpus.size();
  std::size_t n_train = 0, n_dev = 0, n_test = 0;
  if (spec.counts) {
    const auto& c = *spec.counts;
    if (c[0] + c[1] + c[2] > n) {
      throw DataError("split counts " + std::to_string(c[0]) + "+" + std::to_string(c[1]) + "+" +
                      std::to_string(c[2]) + " exceed corpus size " + std::to_string(n));
    }
    n_train = c[0];
    n_dev = c[1];
    n_test = c[2];
  } else {
    if (spec.train < 0 || spec.dev < 0 || spec.test < 0 || std::abs(spec.train + spec.dev + spec.test - 1.0) > 1e-9) {
      throw DataError("split fractions must be non-negative and sum to 1");
    }
    const auto dn = static_cast<double>(n);
    n_train = std::min(n, static_cast<std::size_t>(std::llround(spec.train * dn)));
    n_dev = std::min(n - n_train, static_cast<std::size_t>(std::llround(spec.dev * dn)));
    n_test = n - n_train - n_dev;
  }

  std::vector<RawTweet> shuffled(corpus.begin(), corpus.end());
  SplitMix64 rng(seed);
  deterministic_shuffle(std::span<RawTweet>(shuffled), rng);

  CorpusSplit out;
  auto take = [&](std::size_t begin, std::size_t count, std::vector<RawTweet>& dst, const char* name, bool filter) {
    for (auto i = begin; i < begin + count; ++i) {
      if (filter && !is_trainable(shuffled[i])) {
        out.dropped.push_back({shuffled[i].id, name, "fewer than 2 tokens"});
        continue;
      }
      dst.push_back(std::move(shuffled[i]));
    }
  };
  take(0, n_train, out.train, "train", true);
  take(n_train, n_dev, out.dev, "dev", true);
  take(n_train + n_dev, n_test, out.test, "test", false);
  for (auto i = n_train + n_dev + n_test; i < n; ++i) out.dropped.push_back({shuffled[i].id, "none", "unassigned"});
  return out;
}

std::vector<RawTweet> carve_validation(std::vector<RawTweet>& train, std::size_t count) {
  if (count > train.size()) {
    throw DataError("validation count " + std::to_string(count) + " exceeds training size " +
                    std::to_string(train.size()));
  }
  const auto first = train.end() - static_cast<std::ptrdiff_t>(count);
  std::vector<RawTweet> validation(std::make_move_iterator(first), std::make_move_iterator(train.end()));
  train.erase(first, train.end());
  return validation;
}

ModelConfig model_config_for(const ExperimentConfig& config, const CategoryGroup& group,
                             const FeatureSources& sources, std::size_t n_classes, std::uint64_t seed) {
  ModelConfig m;
  m.onehot_cols = group.columns();
  m.max_tokens = config.limits.max_tokens;
  m.mwe_embed_dim = sources.word_dim();
  m.max_mwe_tokens = config.limits.max_mwe_tokens;
  m.sentence_dim = sources.sentence_dim();
  m.conv_filters = config.architecture.conv_filters;
  m.kernel = config.architecture.kernel;
  m.pool = config.architecture.pool;
  m.lstm_units = config.architecture.lstm_units;
  m.dense_units = config.architecture.dense_units;
  m.n_classes = n_classes;
  m.mwe_branches = config.mode != EmbeddingMode::SentenceOnly;
  m.seed = seed;
  return m;
}

std::size_t select_best_seed(std::span<const double> dev_scores) {
  if (dev_scores.empty()) throw std::invalid_argument("select_best_seed: no scores");
  return argmax(dev_scores);
}

std::vector<std::size_t> predict_test(const Model& model, std::span<const ExampleFeatures> test,
                                      int negative_class) {
  std::vector<std::size_t> out;
  out.reserve(test.size());
  for (const auto& x : test) {
    out.push_back(x.empty_text ? static_cast<std::size_t>(negative_class) : predict(model, x).label);
  }
  return out;
}

namespace {

std::vector<std::size_t> labels_of(std::span<const ExampleFeatures> xs) {
  std::vector<std::size_t> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(static_cast<std::size_t>(x.label));
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const ExperimentData& data) {
  if (!data.lexicon || !data.dictionary) throw std::invalid_argument("run_experiment: lexicon and dictionary required");
  if (config.n_seeds == 0) throw std::invalid_argument("run_experiment: n_seeds must be positive");

  const auto group = category_group(config.group);
  auto sources = data.sources;
  sources.mode = config.mode;
  const auto n_classes = data.dataset.n_classes();

  auto build = [&](const std::vector<RawTweet>& tweets) {
    return assemble_dataset(tweets, *data.lexicon, group, *data.dictionary, sources, config.limits);
  };
  const auto train_x = build(data.train);
  const auto val_x = build(data.validation);
  const auto dev_x = build(data.dev);
  const auto test_x = build(data.test);
  if (train_x.empty()) throw DataError("run_experiment: training set is empty after filtering");

  ExperimentResult result;
  const auto dev_truth = labels_of(dev_x);
  std::vector<double> dev_scores;
  std::vector<Model> models;
  for (std::size_t i = 0; i < config.n_seeds; ++i) {
    const auto seed = config.base_seed + i;
    try {
      Model model(model_config_for(config, group, sources, n_classes, seed));
      auto trained = train(std::move(model), train_x, val_x, config.hyperparams, seed);
      const double dev_f1 = dev_x.empty()
                                ? trained.history.best_val_macro_f1
                                : macro_f1(confusion_matrix(dev_truth, predict_labels(trained.model, dev_x), n_classes));
      result.runs.push_back({seed, dev_f1, std::move(trained.history)});
      dev_scores.push_back(dev_f1);
      models.push_back(std::move(trained.model));
    } catch (const std::exception& e) {
      throw std::runtime_error("training with seed " + std::to_string(seed) + " failed: " + e.what());
    }
  }

  result.best_index = select_best_seed(dev_scores);
  result.best_model = std::move(models[result.best_index]);
  const auto& best_run = result.runs[result.best_index];
  result.best_metadata = {best_run.seed, best_run.history.epochs.size(), best_run.dev_macro_f1,
                          std::string(selector_name(config.group)), std::string(embedding_mode_name(config.mode))};

  result.test_predictions = predict_test(result.best_model, test_x, data.dataset.negative_class);
  const auto test_truth = labels_of(test_x);
  result.test_report = evaluate(test_truth, result.test_predictions, n_classes, "all");

  // The subset is defined over every category, whatever group the model used.
  const auto all_group = category_group(GroupSelector::MweAll);
  std::vector<TaggedSentence> tagged;
  tagged.reserve(data.test.size());
  for (const auto& t : data.test) tagged.push_back(prepare_tweet(t, *data.lexicon, all_group, *data.dictionary).tagged);
  result.subset_indices = mwe_subset(tagged);
  std::vector<std::size_t> sub_truth, sub_pred;
  for (auto i : result.subset_indices) {
    sub_truth.push_back(test_truth[i]);
    sub_pred.push_back(result.test_predictions[i]);
  }
  result.subset_report = evaluate(sub_truth, sub_pred, n_classes, "mwe");
  return result;
}

nlohmann::json report_json(const EvalReport& report, const DatasetConfig& dataset) {
  const auto k = report.confusion.classes();
  nlohmann::json counts = nlohmann::json::array();
  for (std::size_t r = 0; r < k; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < k; ++c) row.push_back(report.confusion.at(r, c));
    counts.push_back(std::move(row));
  }
  return {
      {"classes", dataset.class_names},
      {"confusion_counts", std::move(counts)},
      {"confusion_percent", report.confusion.row_percentages()},
      {"per_class_f1", report.per_class_f1},
      {"macro_f1", report.macro_f1},
      {"n", report.n_examples},
      {"subset_variant", report.subset_variant},
  };
}

nlohmann::json history_json(const TrainHistory& history) {
  nlohmann::json epochs = nlohmann::json::array();
  for (const auto& e : history.epochs) epochs.push_back({{"loss", e.loss}, {"val_macro_f1", e.val_macro_f1}});
  return {{"epochs", std::move(epochs)},
          {"best_epoch", history.best_epoch},
          {"best_val_macro_f1", history.best_val_macro_f1}};
}

}  // namespace mwehsd
