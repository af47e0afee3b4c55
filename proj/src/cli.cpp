#include "mwehsd/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mwehsd/corpus.hpp"
#include "mwehsd/corpus_stats.hpp"
#include "mwehsd/error.hpp"
#include "mwehsd/experiment_io.hpp"
#include "mwehsd/featurize.hpp"
#include "mwehsd/lexicon.hpp"
#include "mwehsd/metrics.hpp"
#include "mwehsd/mwe_tagger.hpp"
#include "mwehsd/pipeline.hpp"

namespace mwehsd {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kFormats = R"(File formats:
  lexicon TSV      <lemma> <lemma>[ ...]<TAB><Category>   (# comments, blank lines ok)
  lemma TSV        <token><TAB><lemma>
  corpus JSONL     {"id": str, "text": str, "label": str}
                   hateval labels: nonhateful, hateful
                   founta labels:  normal, abusive, hateful (spam rows dropped)
  word vectors     "<count> <dim>" header, then "<token> <v1> ... <vdim>"
  sentence JSONL   {"id": str, "vec": [float]}
  contextual JSONL {"id": str, "tokens": [str], "word_index": [int], "vecs": [[float]]}
  tag output       {"id", "lemmas", "tags", "matches": [{"entry", "category", "positions", "gaps"}]}
  predictions      {"id", "class", "label", "probs"}
  experiment       JSON; see README for keys
Exit codes: 0 ok, 1 usage error, 2 data/validation error.)";

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  return out;
}

LemmaDictionary maybe_dictionary(const std::string& path) {
  return path.empty() ? LemmaDictionary{} : load_lemma_dictionary_file(path);
}

CategoryGroup group_from(const std::string& name) {
  const auto sel = parse_selector(name);
  if (!sel) throw DataError("unknown group '" + name + "' (mweall, mwe5, vmwe5, mwe5_vmwe5)");
  return category_group(*sel);
}

json tagged_json(const std::string& id, const TaggedSentence& t) {
  json tags = json::array();
  for (const auto& tag : t.tags) tags.push_back(std::string(category_name(tag.category)));
  json matches = json::array();
  for (const auto& m : t.matches) {
    matches.push_back({{"entry", m.entry_id},
                       {"category", std::string(category_name(m.category))},
                       {"positions", m.positions},
                       {"gaps", m.gap_count}});
  }
  return {{"id", id}, {"lemmas", t.lemmas}, {"tags", std::move(tags)}, {"matches", std::move(matches)}};
}

// id -> predicted class index
std::map<std::string, std::size_t> load_predictions(const fs::path& path, const DatasetConfig& dataset) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open predictions '" + path.string() + "'");
  std::map<std::string, std::size_t> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto row = json::parse(line);
      const auto id = row.at("id").get<std::string>();
      std::size_t cls = 0;
      if (row.contains("class")) {
        cls = row["class"].get<std::size_t>();
      } else {
        const int c = dataset.class_of(row.at("label").get<std::string>());
        if (c < 0) throw DataError("prediction uses a dropped label");
        cls = static_cast<std::size_t>(c);
      }
      if (cls >= dataset.n_classes()) throw DataError("class " + std::to_string(cls) + " out of range");
      if (!out.emplace(id, cls).second) throw DataError("duplicate id '" + id + "'");
    } catch (const json::exception& e) {
      throw LoadError(lineno, e.what());
    } catch (const LoadError&) {
      throw;
    } catch (const DataError& e) {
      throw LoadError(lineno, e.what());
    }
  }
  return out;
}

std::vector<std::size_t> aligned_predictions(const std::map<std::string, std::size_t>& preds,
                                             const std::vector<RawTweet>& gold, const std::string& source) {
  std::vector<std::size_t> out;
  out.reserve(gold.size());
  for (const auto& t : gold) {
    auto it = preds.find(t.id);
    if (it == preds.end()) throw DataError(source + ": no prediction for tweet '" + t.id + "'");
    out.push_back(it->second);
  }
  return out;
}

void write_json_file(const fs::path& path, const json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiword-expression features for hate speech detection", "mwehsd"};
  app.footer(kFormats);
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  std::string config_path;
  app.add_option("--seed", seed, "Seed for every random choice (overrides the config)");
  app.add_option("--config", config_path, "Experiment config (JSON)");

  std::string lexicon_path, corpus_path, lemmas_path, out_path, dataset_name = "hateval", group_name = "mweall";

  // lexicon-check
  auto* lexicon_check = app.add_subcommand("lexicon-check", "Validate a lexicon and summarize it");
  lexicon_check->add_option("--lexicon", lexicon_path, "Lexicon TSV")->required();
  lexicon_check->add_option("--out", out_path, "Write the summary as JSON");

  // preprocess
  auto* preprocess_cmd = app.add_subcommand("preprocess", "Clean, tokenize and lemmatize a corpus");
  preprocess_cmd->add_option("--corpus", corpus_path, "Corpus JSONL")->required();
  preprocess_cmd->add_option("--dataset", dataset_name, "hateval | founta");
  preprocess_cmd->add_option("--lemmas", lemmas_path, "Lemma dictionary TSV");
  preprocess_cmd->add_option("--out", out_path, "Output JSONL")->required();

  // tag
  auto* tag_cmd = app.add_subcommand("tag", "Tag MWE occurrences in a corpus");
  tag_cmd->add_option("--lexicon", lexicon_path, "Lexicon TSV")->required();
  tag_cmd->add_option("--corpus", corpus_path, "Corpus JSONL")->required();
  tag_cmd->add_option("--group", group_name, "mweall | mwe5 | vmwe5 | mwe5_vmwe5");
  tag_cmd->add_option("--dataset", dataset_name, "hateval | founta");
  tag_cmd->add_option("--lemmas", lemmas_path, "Lemma dictionary TSV");
  tag_cmd->add_option("--out", out_path, "Output JSONL")->required();

  // stats
  std::size_t min_occurrences = 50;
  double max_both_share = 0.97;
  auto* stats_cmd = app.add_subcommand("stats", "MWE distribution statistics of a binary corpus");
  stats_cmd->add_option("--lexicon", lexicon_path, "Lexicon TSV")->required();
  stats_cmd->add_option("--corpus", corpus_path, "Corpus JSONL")->required();
  stats_cmd->add_option("--group", group_name, "Categories to count");
  stats_cmd->add_option("--dataset", dataset_name, "Binary dataset (hateval)");
  stats_cmd->add_option("--lemmas", lemmas_path, "Lemma dictionary TSV");
  stats_cmd->add_option("--min-occurrences", min_occurrences, "Category selection: total must exceed this");
  stats_cmd->add_option("--max-both-share", max_both_share, "Category selection: max share in both classes");
  stats_cmd->add_option("--out", out_path, "Output directory")->required();

  // features
  auto* features_cmd = app.add_subcommand("features", "Dump branch inputs of every split as JSONL");
  features_cmd->add_option("--out", out_path, "Output JSONL")->required();

  // train
  auto* train_cmd = app.add_subcommand("train", "Run the multi-seed training protocol");
  train_cmd->add_option("--out", out_path, "Output directory (overrides output_dir)");

  // predict
  std::string model_path;
  auto* predict_cmd = app.add_subcommand("predict", "Predict a corpus with a checkpoint");
  predict_cmd->add_option("--model", model_path, "Checkpoint JSON")->required();
  predict_cmd->add_option("--corpus", corpus_path, "Corpus JSONL")->required();
  predict_cmd->add_option("--out", out_path, "Output JSONL")->required();

  // evaluate
  std::string pred_path;
  bool subset = false;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score predictions against a gold corpus");
  evaluate_cmd->add_option("--pred", pred_path, "Predictions JSONL")->required();
  evaluate_cmd->add_option("--corpus", corpus_path, "Gold corpus JSONL")->required();
  evaluate_cmd->add_option("--dataset", dataset_name, "hateval | founta");
  evaluate_cmd->add_option("--lexicon", lexicon_path, "Lexicon TSV (needed with --subset)");
  evaluate_cmd->add_option("--lemmas", lemmas_path, "Lemma dictionary TSV");
  evaluate_cmd->add_flag("--subset", subset, "Only tweets containing at least one MWE");
  evaluate_cmd->add_option("--out", out_path, "Report JSON")->required();

  // significance
  std::string pred_a, pred_b;
  double alpha = 0.05;
  auto* significance_cmd = app.add_subcommand("significance", "Matched-pair test between two systems");
  significance_cmd->add_option("--a", pred_a, "Predictions of system A")->required();
  significance_cmd->add_option("--b", pred_b, "Predictions of system B")->required();
  significance_cmd->add_option("--corpus", corpus_path, "Gold corpus JSONL")->required();
  significance_cmd->add_option("--dataset", dataset_name, "hateval | founta");
  significance_cmd->add_option("--alpha", alpha, "Significance level");
  significance_cmd->add_option("--out", out_path, "Result JSON")->required();

  for (std::size_t i = 1; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--seed" || a == "--config") {
      ++i;
      continue;
    }
    if (a.empty() || a[0] == '-') continue;
    bool known = false;
    for (const auto* sub : app.get_subcommands({})) known = known || sub->get_name() == a;
    if (!known) {
      err << "error: unknown subcommand '" << a << "'\n\n" << app.help();
      return 1;
    }
    break;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  auto need_config = [&]() {
    if (config_path.empty()) throw CLI::RequiredError("--config");
    return load_experiment_file(config_path);
  };

  try {
    if (lexicon_check->parsed()) {
      const auto lexicon = load_lexicon_file(lexicon_path);
      std::map<std::string, std::size_t> per_category;
      for (const auto& e : lexicon.entries()) ++per_category[std::string(category_name(e.category))];
      out << lexicon.size() << " entries\n";
      for (const auto& [name, n] : per_category) out << "  " << name << '\t' << n << '\n';
      if (!out_path.empty()) write_json_file(out_path, {{"entries", lexicon.size()}, {"per_category", per_category}});
    } else if (preprocess_cmd->parsed()) {
      const auto dataset = dataset_by_name(dataset_name);
      const auto corpus = load_corpus_file(corpus_path, dataset);
      const auto dictionary = maybe_dictionary(lemmas_path);
      auto o = open_out(out_path);
      for (const auto& t : corpus.tweets) {
        const auto c = preprocess(t, dictionary);
        o << json{{"id", c.id},
                  {"text", clean_text(t.text)},
                  {"tokens", c.surface_tokens},
                  {"lemmas", c.lemmas},
                  {"label", dataset.class_names[static_cast<std::size_t>(c.label)]},
                  {"trainable", is_trainable(c)}}
                 .dump()
          << '\n';
      }
      out << corpus.tweets.size() << " tweets written, " << corpus.dropped << " dropped by label\n";
    } else if (tag_cmd->parsed()) {
      const auto lexicon = load_lexicon_file(lexicon_path);
      const auto group = group_from(group_name);
      const auto dataset = dataset_by_name(dataset_name);
      const auto corpus = load_corpus_file(corpus_path, dataset);
      const auto dictionary = maybe_dictionary(lemmas_path);
      auto o = open_out(out_path);
      for (const auto& t : corpus.tweets) {
        o << tagged_json(t.id, prepare_tweet(t, lexicon, group, dictionary).tagged).dump() << '\n';
      }
    } else if (stats_cmd->parsed()) {
      const auto lexicon = load_lexicon_file(lexicon_path);
      const auto group = group_from(group_name);
      const auto dataset = dataset_by_name(dataset_name);
      if (dataset.n_classes() != 2) throw DataError("stats need a binary dataset");
      const auto corpus = load_corpus_file(corpus_path, dataset);
      const auto dictionary = maybe_dictionary(lemmas_path);
      std::vector<TaggedSentence> tagged;
      std::vector<int> labels;
      for (const auto& t : corpus.tweets) {
        tagged.push_back(prepare_tweet(t, lexicon, group, dictionary).tagged);
        labels.push_back(t.label);
      }
      const fs::path dir(out_path);
      fs::create_directories(dir);
      const auto partition = category_partition(tagged, labels, lexicon);
      {
        auto o = open_out(dir / "histogram.csv");
        write_histogram_csv(o, mwe_per_tweet_histogram(tagged));
      }
      {
        auto o = open_out(dir / "partition.csv");
        write_partition_csv(o, partition);
      }
      {
        auto o = open_out(dir / "class_counts.csv");
        write_class_counts_csv(o, category_class_counts(tagged, labels));
      }
      {
        auto o = open_out(dir / "selected_categories.txt");
        for (auto c : filter_categories_by_stats(partition, min_occurrences, max_both_share)) {
          o << category_name(c) << '\n';
        }
      }
      out << "statistics for " << tagged.size() << " tweets written to " << dir.string() << '\n';
    } else if (features_cmd->parsed()) {
      auto file = need_config();
      if (seed) file.config.base_seed = *seed;
      LoadedExperiment exp;
      load_experiment(file, exp);
      const auto group = category_group(file.config.group);
      auto o = open_out(out_path);
      auto dump = [&](const std::vector<RawTweet>& tweets, const char* split) {
        const auto xs = assemble_dataset(tweets, exp.lexicon, group, exp.dictionary, exp.data.sources, file.config.limits);
        for (const auto& x : xs) {
          std::vector<std::size_t> columns;
          for (std::size_t r = 0; r < x.onehot.dim(0); ++r) {
            for (std::size_t c = 0; c < x.onehot.dim(1); ++c) {
              if (x.onehot.at(r, c) != 0.0) columns.push_back(c);
            }
          }
          std::vector<std::vector<double>> rows;
          for (std::size_t r = 0; r < x.mwe_len; ++r) rows.emplace_back(x.mwe_embeds.row(r).begin(), x.mwe_embeds.row(r).end());
          o << json{{"id", x.id},
                    {"split", split},
                    {"label", x.label},
                    {"onehot_columns", columns},
                    {"mwe_len", x.mwe_len},
                    {"mwe_embeds", rows},
                    {"sentence_vec", x.sentence_vec.storage()}}
                   .dump()
            << '\n';
        }
      };
      dump(exp.data.train, "train");
      dump(exp.data.validation, "validation");
      dump(exp.data.dev, "dev");
      dump(exp.data.test, "test");
    } else if (train_cmd->parsed()) {
      auto file = need_config();
      if (seed) file.config.base_seed = *seed;
      if (!out_path.empty()) file.output_dir = out_path;
      LoadedExperiment exp;
      load_experiment(file, exp);
      const auto result = run_experiment(file.config, exp.data);
      write_experiment_outputs(file.output_dir, result, exp.data.dataset, exp.dropped);
      for (const auto& run : result.runs) out << "seed " << run.seed << "  dev macro-F1 " << run.dev_macro_f1 << '\n';
      out << "selected seed " << result.runs[result.best_index].seed << "  test macro-F1 "
          << result.test_report.macro_f1 << "  MWE-subset macro-F1 " << result.subset_report.macro_f1 << '\n';
    } else if (predict_cmd->parsed()) {
      auto file = need_config();
      const auto checkpoint = load_checkpoint_file(model_path);
      const auto& mc = checkpoint.model.config();
      file.config.mode = parse_embedding_mode(checkpoint.metadata.embedding_mode);
      file.config.limits = {mc.max_tokens, mc.max_mwe_tokens};
      LoadedExperiment exp;
      ExperimentFile light = file;
      load_experiment(light, exp);
      const auto group = group_from(checkpoint.metadata.group);
      const auto dataset = exp.data.dataset;
      const auto corpus = load_corpus_file(corpus_path, dataset);
      const auto xs = assemble_dataset(corpus.tweets, exp.lexicon, group, exp.dictionary, exp.data.sources,
                                       file.config.limits);
      auto o = open_out(out_path);
      for (const auto& x : xs) {
        Prediction p;
        if (x.empty_text) {
          p.label = static_cast<std::size_t>(dataset.negative_class);
        } else {
          p = predict(checkpoint.model, x);
        }
        o << json{{"id", x.id}, {"class", p.label}, {"label", dataset.class_names[p.label]}, {"probs", p.probs}}.dump()
          << '\n';
      }
    } else if (evaluate_cmd->parsed()) {
      const auto dataset = dataset_by_name(dataset_name);
      auto gold = load_corpus_file(corpus_path, dataset).tweets;
      if (subset) {
        if (lexicon_path.empty()) throw CLI::RequiredError("--lexicon (with --subset)");
        const auto lexicon = load_lexicon_file(lexicon_path);
        const auto dictionary = maybe_dictionary(lemmas_path);
        const auto group = category_group(GroupSelector::MweAll);
        std::erase_if(gold, [&](const RawTweet& t) {
          return prepare_tweet(t, lexicon, group, dictionary).tagged.matches.empty();
        });
      }
      const auto pred = aligned_predictions(load_predictions(pred_path, dataset), gold, pred_path);
      std::vector<std::size_t> truth;
      for (const auto& t : gold) truth.push_back(static_cast<std::size_t>(t.label));
      const auto report = evaluate(truth, pred, dataset.n_classes(), subset ? "mwe" : "all");
      write_json_file(out_path, report_json(report, dataset));
      out << "macro-F1 " << report.macro_f1 << " over " << report.n_examples << " tweets\n";
    } else if (significance_cmd->parsed()) {
      const auto dataset = dataset_by_name(dataset_name);
      const auto gold = load_corpus_file(corpus_path, dataset).tweets;
      const auto a = aligned_predictions(load_predictions(pred_a, dataset), gold, pred_a);
      const auto b = aligned_predictions(load_predictions(pred_b, dataset), gold, pred_b);
      std::size_t n01 = 0, n10 = 0;
      for (std::size_t i = 0; i < gold.size(); ++i) {
        const bool ra = a[i] == static_cast<std::size_t>(gold[i].label);
        const bool rb = b[i] == static_cast<std::size_t>(gold[i].label);
        if (!ra && rb) ++n01;
        if (ra && !rb) ++n10;
      }
      const auto r = matched_pair_test(n01, n10, alpha);
      write_json_file(out_path, {{"n01", r.a_wrong_b_right},
                                 {"n10", r.a_right_b_wrong},
                                 {"p_value", r.p_value},
                                 {"alpha", alpha},
                                 {"significant", r.significant}});
      out << "p = " << r.p_value << (r.significant ? " (significant)\n" : " (not significant)\n");
    }
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace mwehsd
