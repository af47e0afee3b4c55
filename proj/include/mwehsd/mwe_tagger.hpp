#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mwehsd/category.hpp"
#include "mwehsd/lexicon.hpp"

namespace mwehsd {

/// Maximum number of foreign tokens allowed inside one occurrence, in total.
inline constexpr std::size_t kMaxGapTokens = 1;

struct MweMatch {
  std::size_t entry_id = 0;
  MweCategory category = MweCategory::NoMwe;
  std::vector<std::size_t> positions;  // strictly increasing
  std::size_t gap_count = 0;

  std::size_t first() const { return positions.front(); }
  std::size_t last() const { return positions.back(); }
  friend bool operator==(const MweMatch&, const MweMatch&) = default;
};

struct TokenTag {
  MweCategory category = MweCategory::NoMwe;
  std::optional<std::size_t> occurrence;  // index into TaggedSentence::matches

  friend bool operator==(const TokenTag&, const TokenTag&) = default;
};

struct TaggedSentence {
  std::vector<std::string> lemmas;
  std::vector<TokenTag> tags;
  std::vector<MweMatch> matches;  // selected, token-disjoint, ordered by first position

  friend bool operator==(const TaggedSentence&, const TaggedSentence&) = default;
};

/// Every in-order occurrence of every entry with at most `gap_budget`
/// skipped tokens inside its span. Ordered by (first position, entry id,
/// gap count, positions).
std::vector<MweMatch> find_candidate_matches(std::span<const std::string> lemmas,
                                             const Lexicon& lexicon,
                                             std::size_t gap_budget = kMaxGapTokens);

/// Longest-first greedy claim: (entry length desc, gap asc, first position
/// asc, entry id asc). A candidate is kept iff none of its tokens is claimed.
std::vector<MweMatch> resolve_overlaps(std::vector<MweMatch> candidates, const Lexicon& lexicon);

/// find + resolve, then report only matches whose category is active.
TaggedSentence tag_sentence(std::span<const std::string> lemmas,
                            const Lexicon& lexicon,
                            const CategoryGroup& active);

}  // namespace mwehsd
