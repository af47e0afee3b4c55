#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>

#include "mwehsd/lexicon.hpp"
#include "mwehsd/mwe_tagger.hpp"

namespace mwehsd {

// Binary corpora only: label 1 is hateful, label 0 non-hateful.

using Histogram = std::map<std::size_t, std::size_t>;  // matches per tweet -> tweets

Histogram mwe_per_tweet_histogram(std::span<const TaggedSentence> tagged);
std::map<std::size_t, double> histogram_percentages(const Histogram& histogram);

/// Buckets each distinct entry by the classes it occurs in and sums its
/// occurrences into that bucket of its category. Throws DataError on a
/// non-binary label or a length mismatch.
CategoryStatsTable category_partition(std::span<const TaggedSentence> tagged,
                                      std::span<const int> labels,
                                      const Lexicon& lexicon);

struct ClassCounts {
  std::size_t hateful = 0;
  std::size_t nonhateful = 0;

  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

std::map<MweCategory, ClassCounts> category_class_counts(std::span<const TaggedSentence> tagged,
                                                         std::span<const int> labels);

// CSV writers: histogram (count,tweets,percent), partition
// (category,hateful_only,nonhateful_only,both), class counts
// (category,hateful,nonhateful). Category rows follow enum order and cover
// all 20 lexical categories.
void write_histogram_csv(std::ostream& out, const Histogram& histogram);
void write_partition_csv(std::ostream& out, const CategoryStatsTable& partition);
void write_class_counts_csv(std::ostream& out, const std::map<MweCategory, ClassCounts>& counts);

}  // namespace mwehsd
