#include <gtest/gtest.h>

#include <sstream>

#include "mwehsd/category.hpp"
#include "mwehsd/error.hpp"
#include "mwehsd/lexicon.hpp"
#include "oracles.hpp"

using namespace mwehsd;

namespace {

Lexicon parse(const std::string& text) {
  std::istringstream in(text);
  return load_lexicon(in);
}

std::set<MweCategory> as_set(const CategoryGroup& g) { return {g.categories().begin(), g.categories().end()}; }

}  // namespace

TEST(Category, NamesRoundTrip) {
  for (auto c : lexical_categories()) EXPECT_EQ(parse_category(category_name(c)), c);
  EXPECT_EQ(parse_category("NoMwe"), MweCategory::NoMwe);
  EXPECT_FALSE(parse_category("Noun").has_value());
}

TEST(Category, Groups) {
  const auto all = category_group(GroupSelector::MweAll);
  EXPECT_EQ(all.size(), 18u);
  EXPECT_EQ(all.columns(), 19u);
  EXPECT_FALSE(all.contains(MweCategory::Symbol));
  EXPECT_FALSE(all.contains(MweCategory::Interjection));

  const auto mwe5 = as_set(category_group(GroupSelector::Mwe5));
  const auto vmwe5 = as_set(category_group(GroupSelector::Vmwe5));
  EXPECT_EQ(mwe5.size(), 5u);
  EXPECT_EQ(vmwe5.size(), 5u);
  for (auto c : mwe5) EXPECT_EQ(vmwe5.count(c), 0u);
  EXPECT_EQ(category_group(GroupSelector::Mwe5Vmwe5).size(), 10u);
}

TEST(Category, ColumnsSortedByNameNoMweLast) {
  const auto g = category_group(GroupSelector::MweAll);
  for (std::size_t i = 1; i < g.size(); ++i) {
    EXPECT_LT(category_name(g.categories()[i - 1]), category_name(g.categories()[i]));
  }
  EXPECT_EQ(g.column_of(MweCategory::NoMwe), 18u);
  EXPECT_EQ(g.column_of(MweCategory::Symbol), 18u);
  EXPECT_EQ(g.column_of(MweCategory::Adjective), 0u);
}

TEST(Category, Selectors) {
  for (auto s : {GroupSelector::MweAll, GroupSelector::Mwe5, GroupSelector::Vmwe5, GroupSelector::Mwe5Vmwe5}) {
    EXPECT_EQ(parse_selector(selector_name(s)), s);
  }
  EXPECT_FALSE(parse_selector("mwe6").has_value());
}

TEST(Lexicon, LoadsThreeEntries) {
  const auto lex = parse("get out\tFullVerbParticle\na lot\tDeterminer\nthank you\tDiscourse\n");
  EXPECT_EQ(lex.size(), 3u);
  std::set<std::string> keys;
  for (const auto& [k, v] : lex.first_lemma_index()) keys.insert(k);
  EXPECT_EQ(keys, (std::set<std::string>{"get", "a", "thank"}));
  EXPECT_EQ(lex.entry(1).category, MweCategory::Determiner);
}

TEST(Lexicon, EmptyFile) { EXPECT_EQ(parse("").size(), 0u); }

TEST(Lexicon, CommentsBlanksAndCase) {
  const auto lex = parse("# header\n\nGet  Out\tFullVerbParticle\r\n");
  ASSERT_EQ(lex.size(), 1u);
  EXPECT_EQ(lex.entry(0).lemmas, (std::vector<std::string>{"get", "out"}));
}

TEST(Lexicon, SingleLemmaIsAnError) {
  try {
    parse("alone\tDiscourse\n");
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("entry has fewer than 2 lemmas"), std::string::npos);
  }
}

TEST(Lexicon, ErrorsCarryLineNumbers) {
  try {
    parse("a b\tAdverb\n\n# c\nc d\tNotACategory\n");
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
  EXPECT_THROW(parse("a b\tAdverb\nA B\tAdverb\n"), LoadError);
  EXPECT_EQ(parse("a b\tAdverb\na b\tNominal\n").size(), 2u);
  EXPECT_THROW(parse("a b\n"), LoadError);
  EXPECT_THROW(parse("a b\tNoMwe\n"), LoadError);
}

TEST(Lexicon, StartingWithIsAscending) {
  const auto lex = parse("take off\tFullVerbParticle\nget out\tFullVerbParticle\ntake time off\tVerbalIdiom\n");
  const auto ids = lex.starting_with("take");
  EXPECT_EQ(std::vector<std::size_t>(ids.begin(), ids.end()), (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE(lex.starting_with("zzz").empty());
}

TEST(Lexicon, RoundTrip) {
  const auto lex = parse("take off\tFullVerbParticle\nget out\tFullVerbParticle\nin front of\tAdposition\n");
  std::ostringstream out;
  write_lexicon(out, lex);
  EXPECT_EQ(parse(out.str()), lex);
}

TEST(Filter, ReferenceCountsGiveTheTenCategories) {
  const auto selected = filter_categories_by_stats(oracle::reference_category_counts(), 50, 0.97);
  EXPECT_EQ(selected, as_set(category_group(GroupSelector::Mwe5Vmwe5)));
}

TEST(Filter, EdgeCases) {
  CategoryStatsTable zeros;
  for (auto c : lexical_categories()) zeros[c] = {};
  EXPECT_TRUE(filter_categories_by_stats(zeros, 50, 0.97).empty());
  EXPECT_TRUE(filter_categories_by_stats({{MweCategory::Adverb, {10, 10, 10}}}, 50, 0.97).empty());
  // exactly at the share limit is kept, one over the count limit is required
  EXPECT_EQ(filter_categories_by_stats({{MweCategory::Adverb, {3, 3, 194}}}, 50, 0.97).size(), 1u);
  EXPECT_TRUE(filter_categories_by_stats({{MweCategory::Adverb, {25, 25, 0}}}, 50, 0.97).empty());
}

TEST(Filter, Monotone) {
  const auto table = oracle::reference_category_counts();
  for (std::size_t min = 0; min <= 600; min += 25) {
    for (double share = 1.0; share >= 0.0; share -= 0.05) {
      const auto cur = filter_categories_by_stats(table, min, share);
      for (auto c : cur) {
        EXPECT_TRUE(filter_categories_by_stats(table, min > 0 ? min - 1 : 0, share).count(c));
        EXPECT_TRUE(filter_categories_by_stats(table, min, share + 0.05).count(c));
      }
    }
  }
}
