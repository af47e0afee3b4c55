#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mwehsd/category.hpp"

namespace mwehsd {

struct LexiconEntry {
  std::vector<std::string> lemmas;  // lowercase, at least two
  MweCategory category = MweCategory::NoMwe;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

/// Immutable, indexed MWE lexicon. Entry ids are positions in load order.
class Lexicon {
 public:
  Lexicon() = default;

  /// Validates and indexes `entries`; throws DataError on a short entry,
  /// an empty lemma, a NoMwe category or a duplicate.
  explicit Lexicon(std::vector<LexiconEntry> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<LexiconEntry>& entries() const noexcept { return entries_; }
  const LexiconEntry& entry(std::size_t id) const { return entries_.at(id); }

  /// Ids of entries whose first lemma is `lemma`, ascending.
  std::span<const std::size_t> starting_with(std::string_view lemma) const;

  const std::map<std::string, std::vector<std::size_t>, std::less<>>& first_lemma_index() const noexcept {
    return index_;
  }

  friend bool operator==(const Lexicon& a, const Lexicon& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<LexiconEntry> entries_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> index_;
};

/// Reads `lemma1 lemma2[ ...]<TAB>Category` lines. Blank lines and `#`
/// comments are skipped. Errors carry the offending line number.
Lexicon load_lexicon(std::istream& in);
Lexicon load_lexicon_file(const std::filesystem::path& path);
void write_lexicon(std::ostream& out, const Lexicon& lexicon);

/// Occurrence counts of one category split by the classes its MWEs occur in.
struct CategoryStats {
  std::size_t hateful_only = 0;
  std::size_t nonhateful_only = 0;
  std::size_t both = 0;

  std::size_t total() const noexcept { return hateful_only + nonhateful_only + both; }
  friend bool operator==(const CategoryStats&, const CategoryStats&) = default;
};

using CategoryStatsTable = std::map<MweCategory, CategoryStats>;

/// Keeps a category iff its total exceeds `min_occurrences` and its
/// both-class share is at most `max_both_share`. Empty categories are dropped.
std::set<MweCategory> filter_categories_by_stats(const CategoryStatsTable& stats,
                                                 std::size_t min_occurrences,
                                                 double max_both_share);

}  // namespace mwehsd
