#include <gtest/gtest.h>

#include <sstream>

#include "mwehsd/corpus.hpp"
#include "mwehsd/error.hpp"
#include "mwehsd/random.hpp"
#include "mwehsd/textprep.hpp"

using namespace mwehsd;

using Tokens = std::vector<std::string>;

TEST(CleanText, DropsMentionsHashtagsUrls) {
  EXPECT_EQ(clean_text("@user I hate this #topic https://t.co/x"), "I hate this");
  EXPECT_EQ(clean_text(""), "");
  EXPECT_EQ(clean_text("No Markers Here"), "No Markers Here");
  EXPECT_EQ(clean_text("see WWW.example.com and HTTP://x.y now"), "see and now");
  EXPECT_EQ(clean_text("  spaced \t out\n"), "spaced out");
}

TEST(CleanText, Idempotent) {
  SplitMix64 rng(3);
  const Tokens pieces{"@a", "#b", "http://c", "word", "Www.d", "e!", "x@y", "a#b", " ", "\t"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    for (int i = 0; i < 8; ++i) text += pieces[rng.below(pieces.size())] + " ";
    const auto once = clean_text(text);
    EXPECT_EQ(clean_text(once), once);
    for (const auto& t : tokenize(once)) {
      EXPECT_NE(t.front(), '@');
      EXPECT_NE(t.front(), '#');
    }
  }
}

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("don't stop!"), (Tokens{"don't", "stop", "!"}));
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_EQ(tokenize("a  b"), (Tokens{"a", "b"}));
  EXPECT_EQ(tokenize("(hello)..."), (Tokens{"(", "hello", ")", ".", ".", "."}));
  EXPECT_EQ(tokenize("!!"), (Tokens{"!", "!"}));
}

TEST(Lemmatize, Examples) {
  const LemmaDictionary dict(std::map<std::string, std::string, std::less<>>{{"running", "run"}});
  EXPECT_EQ(lemmatize({"Dogs", "running"}, dict), (Tokens{"dog", "run"}));
  EXPECT_TRUE(lemmatize({}, dict).empty());
  EXPECT_EQ(lemmatize({"the"}, dict), (Tokens{"the"}));
}

TEST(Lemmatize, SuffixRules) {
  const LemmaDictionary empty;
  EXPECT_EQ(lemmatize_word("parties", empty), "party");
  EXPECT_EQ(lemmatize_word("boxes", empty), "box");
  EXPECT_EQ(lemmatize_word("wishes", empty), "wish");
  EXPECT_EQ(lemmatize_word("cats", empty), "cat");
  EXPECT_EQ(lemmatize_word("glass", empty), "glass");
  EXPECT_EQ(lemmatize_word("bus", empty), "bus");
  EXPECT_EQ(lemmatize_word("is", empty), "is");
  EXPECT_EQ(lemmatize_word("stopped", empty), "stop");
  EXPECT_EQ(lemmatize_word("walked", empty), "walk");
  EXPECT_EQ(lemmatize_word("shutting", empty), "shut");
  EXPECT_EQ(lemmatize_word("sing", empty), "sing");
  EXPECT_EQ(lemmatize_word("don't", empty), "don't");
}

TEST(Lemmatize, KnownLemmaBreaksSuffixTies) {
  const LemmaDictionary dict(std::map<std::string, std::string, std::less<>>{{"made", "make"}, {"takes", "take"}});
  EXPECT_EQ(lemmatize_word("taking", dict), "take");
  EXPECT_EQ(lemmatize_word("Made", dict), "make");
}

TEST(Lemmatize, LengthPreservedAndLowercase) {
  const LemmaDictionary dict;
  const Tokens in{"Running", "DOGS", "!", "New", "York's"};
  const auto out = lemmatize(in, dict);
  ASSERT_EQ(out.size(), in.size());
  for (const auto& l : out) EXPECT_EQ(l, to_lower_ascii(l));
}

TEST(LemmaDictionary, LoadsTsv) {
  std::istringstream in("# comment\nWent\tgo\n\nran\trun\n");
  const auto dict = load_lemma_dictionary(in);
  EXPECT_EQ(dict.size(), 2u);
  ASSERT_NE(dict.find("went"), nullptr);
  EXPECT_EQ(*dict.find("went"), "go");
  EXPECT_TRUE(dict.is_known_lemma("run"));
  std::istringstream bad("went go\n");
  EXPECT_THROW(load_lemma_dictionary(bad), LoadError);
}

TEST(Trainable, Boundary) {
  EXPECT_TRUE(is_trainable(CleanTweet{"x", {"a", "b"}, {"a", "b"}, 0}));
  EXPECT_FALSE(is_trainable(CleanTweet{"x", {"a"}, {"a"}, 0}));
  EXPECT_FALSE(is_trainable(CleanTweet{}));
  EXPECT_FALSE(is_trainable(RawTweet{"x", "@u #t word", 0}));
  EXPECT_TRUE(is_trainable(RawTweet{"x", "two words", 0}));
}

TEST(Preprocess, KeepsSurfaceCase) {
  const auto c = preprocess(RawTweet{"t1", "@u Shut UP now!", 1}, LemmaDictionary{});
  EXPECT_EQ(c.id, "t1");
  EXPECT_EQ(c.label, 1);
  EXPECT_EQ(c.surface_tokens, (Tokens{"Shut", "UP", "now", "!"}));
  EXPECT_EQ(c.lemmas, (Tokens{"shut", "up", "now", "!"}));
}

TEST(Corpus, Datasets) {
  const auto h = hateval_dataset();
  EXPECT_EQ(h.class_of("nonhateful"), 0);
  EXPECT_EQ(h.class_of("hateful"), 1);
  EXPECT_THROW(h.class_of("spam"), DataError);
  const auto f = founta_dataset();
  EXPECT_EQ(f.n_classes(), 3u);
  EXPECT_EQ(f.class_of("normal"), 0);
  EXPECT_EQ(f.class_of("abusive"), 1);
  EXPECT_EQ(f.class_of("hateful"), 2);
  EXPECT_EQ(f.class_of("spam"), -1);
  EXPECT_EQ(dataset_by_name("founta").name, "founta");
  EXPECT_THROW(dataset_by_name("other"), DataError);
}

TEST(Corpus, LoadJsonl) {
  std::istringstream in(
      "{\"id\":\"a\",\"text\":\"x y\",\"label\":\"normal\"}\n"
      "\n"
      "{\"id\":\"b\",\"text\":\"z\",\"label\":\"spam\"}\n"
      "{\"id\":\"c\",\"text\":\"w\",\"label\":\"hateful\"}\n");
  const auto c = load_corpus(in, founta_dataset());
  ASSERT_EQ(c.tweets.size(), 2u);
  EXPECT_EQ(c.dropped, 1u);
  EXPECT_EQ(c.tweets[1].id, "c");
  EXPECT_EQ(c.tweets[1].label, 2);
}

TEST(Corpus, Errors) {
  std::istringstream dup("{\"id\":\"a\",\"text\":\"x\",\"label\":\"hateful\"}\n{\"id\":\"a\",\"text\":\"y\",\"label\":\"hateful\"}\n");
  try {
    load_corpus(dup, hateval_dataset());
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream bad("{\"id\":\"a\",\"text\":\"x\"}\n");
  EXPECT_THROW(load_corpus(bad, hateval_dataset()), LoadError);
  std::istringstream junk("not json\n");
  EXPECT_THROW(load_corpus(junk, hateval_dataset()), LoadError);
  std::istringstream label("{\"id\":\"a\",\"text\":\"x\",\"label\":\"maybe\"}\n");
  EXPECT_THROW(load_corpus(label, hateval_dataset()), LoadError);
}
