#include <gtest/gtest.h>

#include "mwehsd/error.hpp"
#include "mwehsd/featurize.hpp"

using namespace mwehsd;

namespace {

const CategoryGroup kAll = category_group(GroupSelector::MweAll);
const auto kVpc = MweCategory::FullVerbParticle;

Lexicon get_out() { return Lexicon({{{"get", "out"}, kVpc}}); }

TaggedSentence tagged(const std::vector<std::string>& lemmas) { return tag_sentence(lemmas, get_out(), kAll); }

CleanTweet clean(const std::vector<std::string>& tokens) { return {"t", tokens, tokens, 0}; }

}  // namespace

TEST(Modes, Names) {
  for (auto m : {EmbeddingMode::Static, EmbeddingMode::Contextual, EmbeddingMode::SentenceOnly}) {
    EXPECT_EQ(parse_embedding_mode(embedding_mode_name(m)), m);
  }
  EXPECT_THROW(parse_embedding_mode("bert"), DataError);
}

TEST(OneHot, Rows) {
  const auto t = tagged({"get", "out", "now"});
  const auto m = onehot_sequence(t, kAll, 4);
  ASSERT_EQ(m.shape(), (std::vector<std::size_t>{4, 19}));
  for (std::size_t r = 0; r < 4; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < 19; ++c) sum += m.at(r, c);
    EXPECT_EQ(sum, r < 3 ? 1.0 : 0.0);
  }
  EXPECT_EQ(m.at(0, kAll.column_of(kVpc)), 1.0);
  EXPECT_EQ(m.at(2, 18), 1.0);
}

TEST(OneHot, EmptyAndAllNoMwe) {
  const auto empty = onehot_sequence(tagged({}), kAll, 4);
  for (double v : empty.values()) EXPECT_EQ(v, 0.0);
  const auto plain = onehot_sequence(tagged({"a", "b"}), kAll, 4);
  EXPECT_EQ(plain.at(0, 18), 1.0);
  EXPECT_EQ(plain.at(1, 18), 1.0);
  const auto truncated = onehot_sequence(tagged({"a", "b", "c"}), kAll, 2);
  EXPECT_EQ(truncated.dim(0), 2u);
}

TEST(MweEmbeds, StaticInSentenceOrder) {
  WordVectorStore store(2);
  store.insert("get", {1, 2});
  store.insert("out", {3, 4});
  const auto t = tagged({"get", "right", "out"});
  const auto [m, len] = mwe_embedding_sequence(t, clean({"GET", "right", "out"}), store, 16);
  EXPECT_EQ(len, 2u);
  EXPECT_EQ(m.at(0, 0), 1.0);
  EXPECT_EQ(m.at(1, 1), 4.0);
  EXPECT_EQ(m.at(2, 0), 0.0);
  const auto [z, zlen] = mwe_embedding_sequence(tagged({"a", "b"}), clean({"a", "b"}), store, 16);
  EXPECT_EQ(zlen, 0u);
  for (double v : z.values()) EXPECT_EQ(v, 0.0);
  const auto [cut, cutlen] = mwe_embedding_sequence(t, clean({"get", "right", "out"}), store, 1);
  EXPECT_EQ(cutlen, 1u);
}

TEST(MweEmbeds, ContextualSubwords) {
  ContextualVectorStore store;
  store.insert("t", {{"get", "right", "ou", "##t"}, {0, 1, 2, 2}, {{1}, {2}, {3}, {4}}});
  const auto t = tagged({"get", "right", "out"});
  const auto [m, len] = mwe_embedding_sequence(t, clean({"get", "right", "out"}), store, 16);
  EXPECT_EQ(len, 3u);
  EXPECT_EQ(m.at(0, 0), 1.0);
  EXPECT_EQ(m.at(1, 0), 3.0);
  EXPECT_EQ(m.at(2, 0), 4.0);
  CleanTweet other = clean({"get", "out"});
  other.id = "t9";
  try {
    mwe_embedding_sequence(tagged({"get", "out"}), other, store, 16);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("t9"), std::string::npos);
  }
}

TEST(MweEmbeds, SyntheticMatchesSynthVector) {
  const auto t = tagged({"get", "out"});
  const auto [m, len] = mwe_embedding_sequence(t, clean({"Get", "out"}), 5, 3, 16);
  ASSERT_EQ(len, 2u);
  const auto v = synth_vector("get", 5, 3);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(m.at(0, i), static_cast<double>(v[i]));
}

TEST(Assemble, ShapesAndUntaggedTweet) {
  const std::vector<RawTweet> corpus{{"a", "get out now", 1}, {"b", "nothing here", 0}};
  FeatureSources src;
  const auto xs = assemble_dataset(corpus, get_out(), kAll, LemmaDictionary{}, src, {8, 4});
  ASSERT_EQ(xs.size(), 2u);
  for (const auto& x : xs) {
    EXPECT_EQ(x.onehot.shape(), (std::vector<std::size_t>{8, 19}));
    EXPECT_EQ(x.mwe_embeds.shape(), (std::vector<std::size_t>{4, 16}));
    EXPECT_EQ(x.sentence_vec.shape(), (std::vector<std::size_t>{32}));
  }
  EXPECT_EQ(xs[0].mwe_len, 2u);
  EXPECT_EQ(xs[0].match_count, 1u);
  EXPECT_EQ(xs[1].mwe_len, 0u);
  EXPECT_EQ(xs[1].onehot.at(0, 18), 1.0);
  EXPECT_EQ(xs[1].onehot.at(1, 18), 1.0);
  EXPECT_EQ(xs, assemble_dataset(corpus, get_out(), kAll, LemmaDictionary{}, src, {8, 4}));
}

TEST(Assemble, EmptyTextFlag) {
  const std::vector<RawTweet> corpus{{"e", "@u #t", 0}};
  const auto xs = assemble_dataset(corpus, get_out(), kAll, LemmaDictionary{}, FeatureSources{}, {8, 4});
  EXPECT_TRUE(xs[0].empty_text);
}

TEST(Assemble, MissingSentenceVectorNamesTweet) {
  SentenceVectorStore sentences;
  sentences.insert("a", Vector(4, 0.5f));
  FeatureSources src;
  src.sentences = &sentences;
  const std::vector<RawTweet> corpus{{"a", "get out", 1}, {"t9", "x y", 0}};
  try {
    assemble_dataset(corpus, get_out(), kAll, LemmaDictionary{}, src, {8, 4});
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("t9"), std::string::npos);
  }
}
