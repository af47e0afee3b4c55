#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "mwehsd/pipeline.hpp"

namespace mwehsd {

/// Experiment file (JSON). Paths are resolved against the file's directory.
///
///   dataset            "hateval" | "founta"
///   corpus             single JSONL corpus, split by `split` + `seed`, or
///   train, dev, test   pre-split JSONL corpora
///   validation_count   tweets carved from train for early stopping
///   lexicon, lemmas    lexicon TSV, optional lemma dictionary TSV
///   group              mweall | mwe5 | vmwe5 | mwe5_vmwe5
///   embedding_mode     static | contextual | sentence-only
///   word_vectors, contextual_vectors, sentence_vectors
///                      store files; absent word/sentence stores are synthesized
///   synthetic          {word_dim, sentence_dim, seed}
///   split              {train, dev, test} fractions or {counts: [a, b, c]}
///   hyperparams        {learning_rate, batch_size, max_epochs, patience}
///   architecture       {conv_filters, kernel, pool, lstm_units, dense_units}
///   limits             {max_tokens, max_mwe_tokens}
///   n_seeds, seed      seeds are seed .. seed + n_seeds - 1
///   output_dir
struct ExperimentFile {
  std::filesystem::path base_dir;
  std::string dataset = "hateval";
  std::optional<std::filesystem::path> corpus;
  std::optional<std::filesystem::path> train, dev, test;
  std::size_t validation_count = 0;
  std::filesystem::path lexicon;
  std::optional<std::filesystem::path> lemmas;
  std::optional<std::filesystem::path> word_vectors, contextual_vectors, sentence_vectors;
  std::size_t synthetic_word_dim = 16;
  std::size_t synthetic_sentence_dim = 32;
  std::uint64_t synthetic_seed = 0;
  SplitSpec split;
  std::uint64_t split_seed = 1;
  ExperimentConfig config;
  std::filesystem::path output_dir = "out";
};

ExperimentFile parse_experiment_file(const nlohmann::json& doc, const std::filesystem::path& base_dir);
ExperimentFile load_experiment_file(const std::filesystem::path& path);

/// Everything an experiment file points at, loaded and owned in one place.
struct LoadedExperiment {
  ExperimentFile file;
  Lexicon lexicon;
  LemmaDictionary dictionary;
  std::optional<WordVectorStore> words;
  std::optional<ContextualVectorStore> contextual;
  std::optional<SentenceVectorStore> sentences;
  std::vector<DroppedTweet> dropped;
  ExperimentData data;  // store pointers refer to the members above

  LoadedExperiment() = default;
  LoadedExperiment(const LoadedExperiment&) = delete;
  LoadedExperiment& operator=(const LoadedExperiment&) = delete;
};

/// Loads stores and corpora and performs the split/validation carve.
void load_experiment(const ExperimentFile& file, LoadedExperiment& out);

/// Writes report.json, report_subset.json, history_<i>.json, model_best.json
/// and dropped.json into `dir`.
void write_experiment_outputs(const std::filesystem::path& dir, const ExperimentResult& result,
                              const DatasetConfig& dataset, const std::vector<DroppedTweet>& dropped);

}  // namespace mwehsd
