#include <gtest/gtest.h>

#include "mwehsd/mwe_tagger.hpp"
#include "oracles.hpp"

using namespace mwehsd;

using Lemmas = std::vector<std::string>;

namespace {

Lexicon lex(std::vector<std::pair<std::string, MweCategory>> items) {
  std::vector<LexiconEntry> entries;
  for (auto& [phrase, cat] : items) {
    LexiconEntry e;
    std::string word;
    for (char ch : phrase + " ") {
      if (ch == ' ') {
        if (!word.empty()) e.lemmas.push_back(word);
        word.clear();
      } else {
        word += ch;
      }
    }
    e.category = cat;
    entries.push_back(e);
  }
  return Lexicon(std::move(entries));
}

const auto kVpc = MweCategory::FullVerbParticle;
const CategoryGroup kAll = category_group(GroupSelector::MweAll);

}  // namespace

TEST(Candidates, OneGapAllowed) {
  const auto l = lex({{"get out", kVpc}});
  const auto m = find_candidate_matches(Lemmas{"get", "right", "out"}, l);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].positions, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(m[0].gap_count, 1u);
}

TEST(Candidates, TwoGapsRejected) {
  const auto l = lex({{"get out", kVpc}});
  EXPECT_TRUE(find_candidate_matches(Lemmas{"get", "the", "hell", "out"}, l).empty());
  EXPECT_TRUE(find_candidate_matches(Lemmas{}, l).empty());
}

TEST(Candidates, GapBudgetIsPerOccurrence) {
  const auto l = lex({{"a b c", kVpc}});
  EXPECT_EQ(find_candidate_matches(Lemmas{"a", "x", "b", "c"}, l).size(), 1u);
  EXPECT_TRUE(find_candidate_matches(Lemmas{"a", "x", "b", "y", "c"}, l).empty());
  EXPECT_EQ(find_candidate_matches(Lemmas{"a", "x", "b", "y", "c"}, l, 2).size(), 1u);
}

TEST(Candidates, AllInvariantsHold) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = oracle::random_tagger_instance(seed);
    for (const auto& m : find_candidate_matches(inst.lemmas, inst.lexicon)) {
      const auto& e = inst.lexicon.entry(m.entry_id);
      ASSERT_EQ(m.positions.size(), e.lemmas.size());
      EXPECT_EQ(m.gap_count, m.last() - m.first() + 1 - m.positions.size());
      EXPECT_LE(m.gap_count, kMaxGapTokens);
      for (std::size_t j = 0; j < e.lemmas.size(); ++j) EXPECT_EQ(inst.lemmas[m.positions[j]], e.lemmas[j]);
    }
  }
}

TEST(Resolve, LongestWins) {
  const auto l = lex({{"take off", kVpc}, {"take time off", MweCategory::VerbalIdiom}});
  const Lemmas s{"take", "time", "off"};
  const auto picked = resolve_overlaps(find_candidate_matches(s, l), l);
  ASSERT_EQ(picked.size(), 1u);
  EXPECT_EQ(picked[0].entry_id, 1u);
  EXPECT_EQ(picked[0].positions, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Resolve, DisjointAllKeptAndEmpty) {
  const auto l = lex({{"get out", kVpc}, {"thank you", MweCategory::Discourse}});
  const Lemmas s{"thank", "you", "get", "out"};
  EXPECT_EQ(resolve_overlaps(find_candidate_matches(s, l), l).size(), 2u);
  EXPECT_TRUE(resolve_overlaps({}, l).empty());
}

TEST(Resolve, FewerGapsThenLeftmostThenLexiconOrder) {
  const auto l = lex({{"a b", kVpc}, {"b c", MweCategory::Discourse}});
  // a b c: both contiguous and equal length; leftmost "a b" wins
  auto picked = resolve_overlaps(find_candidate_matches(Lemmas{"a", "b", "c"}, l), l);
  ASSERT_EQ(picked.size(), 1u);
  EXPECT_EQ(picked[0].entry_id, 0u);
  // a x b c: "b c" has no gap and beats "a _ b"
  picked = resolve_overlaps(find_candidate_matches(Lemmas{"a", "x", "b", "c"}, l), l);
  ASSERT_EQ(picked.size(), 1u);
  EXPECT_EQ(picked[0].entry_id, 1u);
}

TEST(Tag, Examples) {
  const auto l = lex({{"get out", kVpc}});
  const auto t = tag_sentence(Lemmas{"get", "right", "out"}, l, kAll);
  ASSERT_EQ(t.tags.size(), 3u);
  EXPECT_EQ(t.tags[0].category, kVpc);
  EXPECT_EQ(t.tags[1].category, MweCategory::NoMwe);
  EXPECT_EQ(t.tags[2].category, kVpc);
  EXPECT_EQ(t.tags[0].occurrence, 0u);
  EXPECT_FALSE(t.tags[1].occurrence.has_value());

  const auto off = tag_sentence(Lemmas{"get", "right", "out"}, l, CategoryGroup("d", {MweCategory::Discourse}));
  for (const auto& tag : off.tags) EXPECT_EQ(tag.category, MweCategory::NoMwe);
  EXPECT_TRUE(off.matches.empty());

  const auto ty = tag_sentence(Lemmas{"thank", "you"}, lex({{"thank you", MweCategory::Discourse}}), kAll);
  ASSERT_EQ(ty.matches.size(), 1u);
  EXPECT_EQ(ty.matches[0].gap_count, 0u);
  EXPECT_EQ(ty.tags[0].category, MweCategory::Discourse);
  EXPECT_EQ(ty.tags[1].category, MweCategory::Discourse);
}

TEST(Tag, FilteringHappensAfterResolution) {
  // the longer idiom claims the tokens even when its category is inactive
  const auto l = lex({{"take off", kVpc}, {"take time off", MweCategory::VerbalIdiom}});
  const auto t = tag_sentence(Lemmas{"take", "time", "off"}, l, CategoryGroup("v", {kVpc}));
  EXPECT_TRUE(t.matches.empty());
}

TEST(Tag, MatchesBruteForceOracle) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto inst = oracle::random_tagger_instance(seed);
    ASSERT_EQ(tag_sentence(inst.lemmas, inst.lexicon, inst.active),
              oracle::brute_force_tag(inst.lemmas, inst.lexicon, inst.active))
        << "seed " << seed;
  }
}

TEST(Tag, DisjointAndMonotoneUnderRestriction) {
  for (std::uint64_t seed = 1000; seed < 1300; ++seed) {
    const auto inst = oracle::random_tagger_instance(seed);
    const auto full = tag_sentence(inst.lemmas, inst.lexicon, kAll);
    std::vector<int> owner(inst.lemmas.size(), -1);
    for (std::size_t i = 0; i < full.matches.size(); ++i) {
      for (auto p : full.matches[i].positions) {
        EXPECT_EQ(owner[p], -1);
        owner[p] = static_cast<int>(i);
      }
    }
    for (std::size_t p = 0; p < full.tags.size(); ++p) {
      EXPECT_EQ(full.tags[p].category == MweCategory::NoMwe, !full.tags[p].occurrence.has_value());
    }
    const auto part = tag_sentence(inst.lemmas, inst.lexicon, inst.active);
    std::vector<MweMatch> expected;
    for (const auto& m : full.matches) {
      if (inst.active.contains(m.category)) expected.push_back(m);
    }
    EXPECT_EQ(part.matches, expected);
  }
}
