#include "mwehsd/corpus.hpp"

#include <fstream>
#include <istream>

#include <nlohmann/json.hpp>

#include "mwehsd/error.hpp"

namespace mwehsd {

int DatasetConfig::class_of(std::string_view label) const {
  if (dropped_labels.contains(label)) return -1;
  for (std::size_t i = 0; i < class_names.size(); ++i) {
    if (class_names[i] == label) return static_cast<int>(i);
  }
  throw DataError("unknown label '" + std::string(label) + "' for dataset " + name);
}

DatasetConfig hateval_dataset() { return {"hateval", {"nonhateful", "hateful"}, {}, 0}; }

DatasetConfig founta_dataset() { return {"founta", {"normal", "abusive", "hateful"}, {"spam"}, 0}; }

DatasetConfig dataset_by_name(std::string_view name) {
  if (name == "hateval") return hateval_dataset();
  if (name == "founta") return founta_dataset();
  throw DataError("unknown dataset '" + std::string(name) + "' (expected hateval or founta)");
}

LoadedCorpus load_corpus(std::istream& in, const DatasetConfig& dataset) {
  LoadedCorpus out;
  std::set<std::string, std::less<>> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw LoadError(lineno, std::string("invalid JSON: ") + e.what());
    }
    for (const char* key : {"id", "text", "label"}) {
      if (!row.contains(key) || !row[key].is_string()) {
        throw LoadError(lineno, std::string("missing string field '") + key + "'");
      }
    }
    RawTweet tweet;
    tweet.id = row["id"].get<std::string>();
    tweet.text = row["text"].get<std::string>();
    int cls = 0;
    try {
      cls = dataset.class_of(row["label"].get<std::string>());
    } catch (const DataError& e) {
      throw LoadError(lineno, e.what());
    }
    if (cls < 0) {
      ++out.dropped;
      continue;
    }
    if (!ids.insert(tweet.id).second) throw LoadError(lineno, "duplicate tweet id '" + tweet.id + "'");
    tweet.label = cls;
    out.tweets.push_back(std::move(tweet));
  }
  return out;
}

LoadedCorpus load_corpus_file(const std::filesystem::path& path, const DatasetConfig& dataset) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus '" + path.string() + "'");
  return load_corpus(in, dataset);
}

}  // namespace mwehsd
