#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mwehsd/category.hpp"
#include "mwehsd/checkpoint.hpp"
#include "mwehsd/corpus.hpp"
#include "mwehsd/featurize.hpp"
#include "mwehsd/lexicon.hpp"
#include "mwehsd/metrics.hpp"
#include "mwehsd/model.hpp"
#include "mwehsd/train.hpp"

namespace mwehsd {

/// Either fractions (summing to 1) or explicit sizes; sizes win when set.
struct SplitSpec {
  double train = 0.6;
  double dev = 0.2;
  double test = 0.2;
  std::optional<std::array<std::size_t, 3>> counts;
};

struct DroppedTweet {
  std::string id;
  std::string split;   // "train", "dev", or "none" for tweets no split received
  std::string reason;  // "fewer than 2 tokens" or "unassigned"
};

struct CorpusSplit {
  std::vector<RawTweet> train;
  std::vector<RawTweet> dev;
  std::vector<RawTweet> test;  // never filtered
  std::vector<DroppedTweet> dropped;
};

/// Seeded shuffle, then partition. Train and dev keep only trainable tweets;
/// the rest are listed in `dropped`.
CorpusSplit split_corpus(std::span<const RawTweet> corpus, const SplitSpec& spec, std::uint64_t seed);

/// Moves the last `count` tweets of `train` into the returned validation set.
std::vector<RawTweet> carve_validation(std::vector<RawTweet>& train, std::size_t count);

/// Architecture knobs that do not depend on the data.
struct ArchitectureConfig {
  std::vector<std::size_t> conv_filters{32, 16, 8};
  std::size_t kernel = 3;
  std::size_t pool = 2;
  std::size_t lstm_units = 192;
  std::size_t dense_units = 256;
};

struct ExperimentConfig {
  GroupSelector group = GroupSelector::MweAll;
  EmbeddingMode mode = EmbeddingMode::Static;
  Hyperparams hyperparams;
  ArchitectureConfig architecture;
  FeatureLimits limits;
  std::size_t n_seeds = 9;
  std::uint64_t base_seed = 1;
};

struct ExperimentData {
  DatasetConfig dataset;
  std::vector<RawTweet> train;
  std::vector<RawTweet> validation;
  std::vector<RawTweet> dev;
  std::vector<RawTweet> test;
  const Lexicon* lexicon = nullptr;
  const LemmaDictionary* dictionary = nullptr;
  FeatureSources sources;  // mode is taken from the config
};

struct SeedRun {
  std::uint64_t seed = 0;
  double dev_macro_f1 = 0.0;
  TrainHistory history;
};

struct ExperimentResult {
  std::vector<SeedRun> runs;
  std::size_t best_index = 0;
  Model best_model{ModelConfig{}};
  CheckpointMetadata best_metadata;
  std::vector<std::size_t> test_predictions;
  EvalReport test_report;
  EvalReport subset_report;               // tweets with >= 1 MWE (all categories)
  std::vector<std::size_t> subset_indices;
};

ModelConfig model_config_for(const ExperimentConfig& config, const CategoryGroup& group,
                             const FeatureSources& sources, std::size_t n_classes, std::uint64_t seed);

/// Argmax of dev scores; ties go to the lowest index.
std::size_t select_best_seed(std::span<const double> dev_scores);

/// Empty-after-cleaning tweets get `negative_class` without running the
/// model; everything else is the model's argmax.
std::vector<std::size_t> predict_test(const Model& model, std::span<const ExampleFeatures> test,
                                      int negative_class);

/// Trains n_seeds models (seeds base_seed + i), keeps the best on dev and
/// evaluates it once on test, both in full and on the MWE subset.
ExperimentResult run_experiment(const ExperimentConfig& config, const ExperimentData& data);

nlohmann::json report_json(const EvalReport& report, const DatasetConfig& dataset);
nlohmann::json history_json(const TrainHistory& history);

}  // namespace mwehsd
