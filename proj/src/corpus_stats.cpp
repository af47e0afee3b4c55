#include "mwehsd/corpus_stats.hpp"

#include <cstdio>
#include <ostream>

#include "mwehsd/error.hpp"

namespace mwehsd {

namespace {

void check_binary(std::span<const TaggedSentence> tagged, std::span<const int> labels) {
  if (tagged.size() != labels.size()) {
    throw DataError("corpus stats: " + std::to_string(tagged.size()) + " tagged tweets vs " +
                    std::to_string(labels.size()) + " labels");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw DataError("corpus stats need binary labels; tweet " + std::to_string(i) + " has label " +
                      std::to_string(labels[i]));
    }
  }
}

}  // namespace

Histogram mwe_per_tweet_histogram(std::span<const TaggedSentence> tagged) {
  Histogram h;
  for (const auto& t : tagged) ++h[t.matches.size()];
  return h;
}

std::map<std::size_t, double> histogram_percentages(const Histogram& histogram) {
  std::size_t total = 0;
  for (const auto& [bin, n] : histogram) total += n;
  std::map<std::size_t, double> out;
  for (const auto& [bin, n] : histogram) out[bin] = 100.0 * static_cast<double>(n) / static_cast<double>(total);
  return out;
}

CategoryStatsTable category_partition(std::span<const TaggedSentence> tagged,
                                      std::span<const int> labels,
                                      const Lexicon& lexicon) {
  check_binary(tagged, labels);
  struct Seen {
    std::size_t hateful = 0;
    std::size_t nonhateful = 0;
  };
  std::map<std::size_t, Seen> per_entry;
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    for (const auto& m : tagged[i].matches) {
      auto& s = per_entry[m.entry_id];
      (labels[i] == 1 ? s.hateful : s.nonhateful) += 1;
    }
  }

  CategoryStatsTable table;
  for (auto c : lexical_categories()) table[c] = {};
  for (const auto& [id, s] : per_entry) {
    auto& row = table[lexicon.entry(id).category];
    if (s.hateful && s.nonhateful) {
      row.both += s.hateful + s.nonhateful;
    } else if (s.hateful) {
      row.hateful_only += s.hateful;
    } else {
      row.nonhateful_only += s.nonhateful;
    }
  }
  return table;
}

std::map<MweCategory, ClassCounts> category_class_counts(std::span<const TaggedSentence> tagged,
                                                         std::span<const int> labels) {
  check_binary(tagged, labels);
  std::map<MweCategory, ClassCounts> out;
  for (auto c : lexical_categories()) out[c] = {};
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    for (const auto& m : tagged[i].matches) {
      auto& row = out[m.category];
      (labels[i] == 1 ? row.hateful : row.nonhateful) += 1;
    }
  }
  return out;
}

void write_histogram_csv(std::ostream& out, const Histogram& histogram) {
  const auto pct = histogram_percentages(histogram);
  out << "count,tweets,percent\n";
  char buf[32];
  for (const auto& [bin, n] : histogram) {
    std::snprintf(buf, sizeof buf, "%.4f", pct.at(bin));
    out << bin << ',' << n << ',' << buf << '\n';
  }
}

void write_partition_csv(std::ostream& out, const CategoryStatsTable& partition) {
  out << "category,hateful_only,nonhateful_only,both\n";
  for (auto c : lexical_categories()) {
    auto it = partition.find(c);
    const CategoryStats s = it == partition.end() ? CategoryStats{} : it->second;
    out << category_name(c) << ',' << s.hateful_only << ',' << s.nonhateful_only << ',' << s.both << '\n';
  }
}

void write_class_counts_csv(std::ostream& out, const std::map<MweCategory, ClassCounts>& counts) {
  out << "category,hateful,nonhateful\n";
  for (auto c : lexical_categories()) {
    auto it = counts.find(c);
    const ClassCounts s = it == counts.end() ? ClassCounts{} : it->second;
    out << category_name(c) << ',' << s.hateful << ',' << s.nonhateful << '\n';
  }
}

}  // namespace mwehsd
