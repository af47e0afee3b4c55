#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "mwehsd/error.hpp"
#include "mwehsd/experiment_io.hpp"
#include "mwehsd/pipeline.hpp"

using namespace mwehsd;
namespace fs = std::filesystem;

namespace {

std::vector<RawTweet> corpus(std::size_t n) {
  std::vector<RawTweet> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"t" + std::to_string(i), "word number " + std::to_string(i), static_cast<int>(i % 2)});
  }
  return out;
}

std::vector<std::string> ids(const std::vector<RawTweet>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(t.id);
  return out;
}

ExperimentConfig tiny_config() {
  ExperimentConfig c;
  c.n_seeds = 2;
  c.hyperparams.max_epochs = 3;
  c.architecture.conv_filters = {4, 2};
  c.architecture.lstm_units = 4;
  c.architecture.dense_units = 8;
  c.limits = {16, 4};
  return c;
}

}  // namespace

TEST(Split, FractionsAndDeterminism) {
  const auto c = corpus(100);
  const auto a = split_corpus(c, {}, 1);
  EXPECT_EQ(a.train.size(), 60u);
  EXPECT_EQ(a.dev.size(), 20u);
  EXPECT_EQ(a.test.size(), 20u);
  const auto b = split_corpus(c, {}, 1);
  EXPECT_EQ(ids(a.train), ids(b.train));
  EXPECT_EQ(ids(a.test), ids(b.test));
  EXPECT_NE(ids(split_corpus(c, {}, 2).train), ids(a.train));
}

TEST(Split, DropsShortTweetsFromTrainAndDevOnly) {
  auto c = corpus(50);
  for (std::size_t i = 0; i < 50; i += 5) c[i].text = "@u single";
  const auto s = split_corpus(c, {}, 3);
  for (const auto& t : s.train) EXPECT_TRUE(is_trainable(t));
  for (const auto& t : s.dev) EXPECT_TRUE(is_trainable(t));
  std::multiset<std::string> all;
  for (const auto* part : {&s.train, &s.dev, &s.test}) {
    for (const auto& t : *part) all.insert(t.id);
  }
  for (const auto& d : s.dropped) {
    all.insert(d.id);
    EXPECT_NE(d.split, "test");
  }
  const auto input = ids(c);
  EXPECT_EQ(all, (std::multiset<std::string>(input.begin(), input.end())));
}

TEST(Split, ExplicitCounts) {
  SplitSpec spec;
  spec.counts = std::array<std::size_t, 3>{5, 3, 2};
  const auto s = split_corpus(corpus(12), spec, 1);
  EXPECT_EQ(s.train.size(), 5u);
  EXPECT_EQ(s.dev.size(), 3u);
  EXPECT_EQ(s.test.size(), 2u);
  EXPECT_EQ(s.dropped.size(), 2u);
  spec.counts = std::array<std::size_t, 3>{10, 3, 2};
  EXPECT_THROW(split_corpus(corpus(12), spec, 1), DataError);
  SplitSpec bad;
  bad.train = 0.9;
  EXPECT_THROW(split_corpus(corpus(12), bad, 1), DataError);
}

TEST(Split, CarveValidation) {
  auto train = corpus(10);
  const auto val = carve_validation(train, 3);
  EXPECT_EQ(train.size(), 7u);
  EXPECT_EQ(ids(val), (std::vector<std::string>{"t7", "t8", "t9"}));
  EXPECT_THROW(carve_validation(train, 8), DataError);
}

TEST(Select, ArgmaxLowestOnTies) {
  EXPECT_EQ(select_best_seed(std::vector<double>{0.60, 0.66, 0.64}), 1u);
  EXPECT_EQ(select_best_seed(std::vector<double>{0.7, 0.7}), 0u);
  EXPECT_EQ(select_best_seed(std::vector<double>{0.1}), 0u);
}

TEST(PredictTest, EmptyTweetsGetNegativeClass) {
  const Lexicon lex({{{"get", "out"}, MweCategory::FullVerbParticle}});
  const auto group = category_group(GroupSelector::MweAll);
  const std::vector<RawTweet> test{{"e1", "@u #t", 1}, {"n1", "get out now", 1}, {"e2", "", 1}};
  FeatureSources src;
  const auto xs = assemble_dataset(test, lex, group, LemmaDictionary{}, src, {16, 4});
  auto cfg = tiny_config();
  Model model(model_config_for(cfg, group, src, 2, 1));
  // force the model towards class 1 so the rule is visible
  model.output.bias[1] = 100.0;
  const auto pred = predict_test(model, xs, 0);
  EXPECT_EQ(pred, (std::vector<std::size_t>{0, 1, 0}));
  const std::vector<ExampleFeatures> empties{xs[0], xs[2]};
  EXPECT_EQ(predict_test(model, empties, 0), (std::vector<std::size_t>{0, 0}));
}

TEST(Experiment, SingleSeedAndDeterminism) {
  const Lexicon lex({{{"get", "out"}, MweCategory::FullVerbParticle}, {{"thank", "you"}, MweCategory::Discourse}});
  const LemmaDictionary dict;
  ExperimentData data;
  data.dataset = hateval_dataset();
  for (int i = 0; i < 40; ++i) {
    const bool hate = i % 2 == 0;
    RawTweet t{"t" + std::to_string(i), hate ? "get out now" : "thank you all", hate ? 1 : 0};
    (i < 24 ? data.train : i < 32 ? data.dev : data.test).push_back(t);
  }
  data.lexicon = &lex;
  data.dictionary = &dict;
  auto cfg = tiny_config();
  cfg.n_seeds = 1;
  const auto one = run_experiment(cfg, data);
  EXPECT_EQ(one.runs.size(), 1u);
  EXPECT_EQ(one.best_index, 0u);
  EXPECT_EQ(one.test_report.n_examples, 8u);
  EXPECT_EQ(one.subset_report.subset_variant, "mwe");

  cfg.n_seeds = 3;
  const auto a = run_experiment(cfg, data);
  const auto b = run_experiment(cfg, data);
  EXPECT_EQ(a.best_index, b.best_index);
  EXPECT_TRUE(a.best_model == b.best_model);
  EXPECT_EQ(report_json(a.test_report, data.dataset), report_json(b.test_report, data.dataset));
  EXPECT_EQ(a.runs[1].seed, cfg.base_seed + 1);
}

TEST(Report, Schema) {
  const auto r = evaluate(std::vector<std::size_t>{0, 1, 1}, std::vector<std::size_t>{0, 1, 0}, 2);
  const auto j = report_json(r, hateval_dataset());
  for (const char* key : {"classes", "confusion_counts", "confusion_percent", "per_class_f1", "macro_f1", "n",
                          "subset_variant"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["confusion_counts"][1][0], 1);
}

TEST(ExperimentFile, ParsesAndResolvesPaths) {
  const auto doc = nlohmann::json::parse(R"({
    "corpus": "c.jsonl", "lexicon": "l.tsv", "group": "mwe5", "embedding_mode": "sentence-only",
    "split": {"counts": [3, 2, 1], "seed": 4}, "hyperparams": {"patience": 2}, "n_seeds": 3, "seed": 10,
    "limits": {"max_tokens": 20}
  })");
  const auto f = parse_experiment_file(doc, "/base");
  EXPECT_EQ(*f.corpus, fs::path("/base/c.jsonl"));
  EXPECT_EQ(f.lexicon, fs::path("/base/l.tsv"));
  EXPECT_EQ(f.config.group, GroupSelector::Mwe5);
  EXPECT_EQ(f.config.mode, EmbeddingMode::SentenceOnly);
  EXPECT_EQ(f.split.counts->at(1), 2u);
  EXPECT_EQ(f.split_seed, 4u);
  EXPECT_EQ(f.config.hyperparams.patience, 2u);
  EXPECT_EQ(f.config.n_seeds, 3u);
  EXPECT_EQ(f.config.base_seed, 10u);
  EXPECT_EQ(f.config.limits.max_tokens, 20u);
  EXPECT_THROW(parse_experiment_file(nlohmann::json::parse(R"({"lexicon": "l"})"), "/"), DataError);
  EXPECT_THROW(parse_experiment_file(nlohmann::json::parse(R"({"corpus": "c", "lexicon": "l", "group": "x"})"), "/"),
               DataError);
}
