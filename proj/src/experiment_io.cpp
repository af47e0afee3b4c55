#include "mwehsd/experiment_io.hpp"

#include <fstream>

#include "mwehsd/error.hpp"

namespace mwehsd {

namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::optional<std::filesystem::path> optional_path(const json& doc, const char* key,
                                                   const std::filesystem::path& base) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  return resolve(base, doc[key].get<std::string>());
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key) && !obj[key].is_null()) out = obj[key].get<T>();
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace

ExperimentFile parse_experiment_file(const json& doc, const std::filesystem::path& base_dir) {
  try {
    ExperimentFile f;
    f.base_dir = base_dir;
    read(doc, "dataset", f.dataset);
    f.corpus = optional_path(doc, "corpus", base_dir);
    f.train = optional_path(doc, "train", base_dir);
    f.dev = optional_path(doc, "dev", base_dir);
    f.test = optional_path(doc, "test", base_dir);
    if (!f.corpus && !(f.train && f.dev && f.test)) {
      throw DataError("experiment needs 'corpus' or all of 'train', 'dev', 'test'");
    }
    read(doc, "validation_count", f.validation_count);
    if (!doc.contains("lexicon")) throw DataError("experiment needs 'lexicon'");
    f.lexicon = resolve(base_dir, doc["lexicon"].get<std::string>());
    f.lemmas = optional_path(doc, "lemmas", base_dir);
    f.word_vectors = optional_path(doc, "word_vectors", base_dir);
    f.contextual_vectors = optional_path(doc, "contextual_vectors", base_dir);
    f.sentence_vectors = optional_path(doc, "sentence_vectors", base_dir);
    if (doc.contains("synthetic")) {
      const auto& s = doc["synthetic"];
      read(s, "word_dim", f.synthetic_word_dim);
      read(s, "sentence_dim", f.synthetic_sentence_dim);
      read(s, "seed", f.synthetic_seed);
    }
    if (doc.contains("split")) {
      const auto& s = doc["split"];
      if (s.contains("counts")) {
        f.split.counts = s["counts"].get<std::array<std::size_t, 3>>();
      } else {
        read(s, "train", f.split.train);
        read(s, "dev", f.split.dev);
        read(s, "test", f.split.test);
      }
      read(s, "seed", f.split_seed);
    }

    auto& c = f.config;
    if (doc.contains("group")) {
      const auto name = doc["group"].get<std::string>();
      const auto sel = parse_selector(name);
      if (!sel) throw DataError("unknown group '" + name + "'");
      c.group = *sel;
    }
    if (doc.contains("embedding_mode")) c.mode = parse_embedding_mode(doc["embedding_mode"].get<std::string>());
    if (doc.contains("hyperparams")) {
      const auto& h = doc["hyperparams"];
      read(h, "learning_rate", c.hyperparams.learning_rate);
      read(h, "batch_size", c.hyperparams.batch_size);
      read(h, "max_epochs", c.hyperparams.max_epochs);
      read(h, "patience", c.hyperparams.patience);
    }
    if (doc.contains("architecture")) {
      const auto& a = doc["architecture"];
      read(a, "conv_filters", c.architecture.conv_filters);
      read(a, "kernel", c.architecture.kernel);
      read(a, "pool", c.architecture.pool);
      read(a, "lstm_units", c.architecture.lstm_units);
      read(a, "dense_units", c.architecture.dense_units);
    }
    if (doc.contains("limits")) {
      read(doc["limits"], "max_tokens", c.limits.max_tokens);
      read(doc["limits"], "max_mwe_tokens", c.limits.max_mwe_tokens);
    }
    read(doc, "n_seeds", c.n_seeds);
    read(doc, "seed", c.base_seed);
    if (doc.contains("output_dir")) f.output_dir = resolve(base_dir, doc["output_dir"].get<std::string>());
    dataset_by_name(f.dataset);  // validates the name
    return f;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed experiment config: ") + e.what());
  }
}

ExperimentFile load_experiment_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError("config '" + path.string() + "': " + e.what());
  }
  return parse_experiment_file(doc, path.parent_path());
}

void load_experiment(const ExperimentFile& file, LoadedExperiment& out) {
  out.file = file;
  out.lexicon = load_lexicon_file(file.lexicon);
  out.dictionary = file.lemmas ? load_lemma_dictionary_file(*file.lemmas) : LemmaDictionary{};
  if (file.word_vectors) out.words = load_word_vectors_file(*file.word_vectors);
  if (file.contextual_vectors) out.contextual = load_contextual_vectors_file(*file.contextual_vectors);
  if (file.sentence_vectors) out.sentences = load_sentence_vectors_file(*file.sentence_vectors);

  auto& d = out.data;
  d.dataset = dataset_by_name(file.dataset);
  if (file.corpus) {
    const auto corpus = load_corpus_file(*file.corpus, d.dataset);
    auto split = split_corpus(corpus.tweets, file.split, file.split_seed);
    d.train = std::move(split.train);
    d.dev = std::move(split.dev);
    d.test = std::move(split.test);
    out.dropped = std::move(split.dropped);
  } else {
    auto keep_trainable = [&](std::vector<RawTweet> tweets, const char* name) {
      std::vector<RawTweet> kept;
      for (auto& t : tweets) {
        if (is_trainable(t)) {
          kept.push_back(std::move(t));
        } else {
          out.dropped.push_back({t.id, name, "fewer than 2 tokens"});
        }
      }
      return kept;
    };
    d.train = keep_trainable(load_corpus_file(*file.train, d.dataset).tweets, "train");
    d.dev = keep_trainable(load_corpus_file(*file.dev, d.dataset).tweets, "dev");
    d.test = load_corpus_file(*file.test, d.dataset).tweets;
  }
  d.validation = carve_validation(d.train, file.validation_count);
  d.lexicon = &out.lexicon;
  d.dictionary = &out.dictionary;
  d.sources.mode = file.config.mode;
  d.sources.words = out.words ? &*out.words : nullptr;
  d.sources.contextual = out.contextual ? &*out.contextual : nullptr;
  d.sources.sentences = out.sentences ? &*out.sentences : nullptr;
  d.sources.synthetic_word_dim = file.synthetic_word_dim;
  d.sources.synthetic_sentence_dim = file.synthetic_sentence_dim;
  d.sources.synthetic_seed = file.synthetic_seed;
}

void write_experiment_outputs(const std::filesystem::path& dir, const ExperimentResult& result,
                              const DatasetConfig& dataset, const std::vector<DroppedTweet>& dropped) {
  std::filesystem::create_directories(dir);
  auto report = report_json(result.test_report, dataset);
  json seeds = json::array();
  for (const auto& run : result.runs) seeds.push_back({{"seed", run.seed}, {"dev_macro_f1", run.dev_macro_f1}});
  report["seeds"] = seeds;
  report["selected_seed"] = result.runs.at(result.best_index).seed;
  write_json(dir / "report.json", report);
  write_json(dir / "report_subset.json", report_json(result.subset_report, dataset));
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    write_json(dir / ("history_" + std::to_string(i) + ".json"), history_json(result.runs[i].history));
  }
  save_checkpoint_file(dir / "model_best.json", result.best_model, result.best_metadata);
  json drops = json::array();
  for (const auto& d : dropped) drops.push_back({{"id", d.id}, {"split", d.split}, {"reason", d.reason}});
  write_json(dir / "dropped.json", drops);
}

}  // namespace mwehsd
