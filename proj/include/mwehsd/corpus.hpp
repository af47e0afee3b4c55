#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mwehsd/textprep.hpp"

namespace mwehsd {

/// Maps corpus label strings to class indices. Class 0 is the
/// non-hateful class in every built-in dataset.
struct DatasetConfig {
  std::string name;
  std::vector<std::string> class_names;  // index -> label string
  std::set<std::string, std::less<>> dropped_labels;
  int negative_class = 0;

  std::size_t n_classes() const noexcept { return class_names.size(); }
  /// -1 when the label is dropped; throws DataError when unknown.
  int class_of(std::string_view label) const;
};

DatasetConfig hateval_dataset();  // {nonhateful, hateful}
DatasetConfig founta_dataset();   // {normal, abusive, hateful}; spam dropped
DatasetConfig dataset_by_name(std::string_view name);

struct LoadedCorpus {
  std::vector<RawTweet> tweets;
  std::size_t dropped = 0;  // rows whose label is in dropped_labels
};

/// JSON-lines `{"id", "text", "label"}`. Duplicate ids are an error.
LoadedCorpus load_corpus(std::istream& in, const DatasetConfig& dataset);
LoadedCorpus load_corpus_file(const std::filesystem::path& path, const DatasetConfig& dataset);

}  // namespace mwehsd
