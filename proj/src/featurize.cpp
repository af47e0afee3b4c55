#include "mwehsd/featurize.hpp"

#include <algorithm>

#include "mwehsd/error.hpp"

namespace mwehsd {

namespace {

// Writes `vec` into row `row` of `m`.
void put_row(Tensor& m, std::size_t row, const Vector& vec) {
  auto dst = m.row(row);
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = static_cast<double>(vec[i]);
}

template <typename Lookup>
std::pair<Tensor, std::size_t> static_rows(const TaggedSentence& tagged, const CleanTweet& tweet,
                                           std::size_t dim, std::size_t max_rows, Lookup&& lookup) {
  Tensor m({max_rows, dim});
  std::size_t filled = 0;
  for (std::size_t t = 0; t < tagged.tags.size() && filled < max_rows; ++t) {
    if (tagged.tags[t].category == MweCategory::NoMwe) continue;
    put_row(m, filled++, lookup(to_lower_ascii(tweet.surface_tokens.at(t))));
  }
  return {std::move(m), filled};
}

}  // namespace

std::string_view embedding_mode_name(EmbeddingMode mode) {
  switch (mode) {
    case EmbeddingMode::Static: return "static";
    case EmbeddingMode::Contextual: return "contextual";
    case EmbeddingMode::SentenceOnly: return "sentence-only";
  }
  return "static";
}

EmbeddingMode parse_embedding_mode(std::string_view name) {
  for (auto m : {EmbeddingMode::Static, EmbeddingMode::Contextual, EmbeddingMode::SentenceOnly}) {
    if (embedding_mode_name(m) == name) return m;
  }
  throw DataError("unknown embedding mode '" + std::string(name) + "' (static, contextual, sentence-only)");
}

std::size_t FeatureSources::word_dim() const {
  if (mode == EmbeddingMode::Contextual) {
    if (!contextual) throw DataError("contextual mode needs a contextual vector store");
    return contextual->dim();
  }
  return words ? words->dim() : synthetic_word_dim;
}

std::size_t FeatureSources::sentence_dim() const {
  return sentences ? sentences->dim() : synthetic_sentence_dim;
}

Tensor onehot_sequence(const TaggedSentence& tagged, const CategoryGroup& group, std::size_t max_tokens) {
  Tensor m({max_tokens, group.columns()});
  const auto rows = std::min(tagged.tags.size(), max_tokens);
  for (std::size_t t = 0; t < rows; ++t) m.at(t, group.column_of(tagged.tags[t].category)) = 1.0;
  return m;
}

std::pair<Tensor, std::size_t> mwe_embedding_sequence(const TaggedSentence& tagged,
                                                      const CleanTweet& tweet,
                                                      const WordVectorStore& store,
                                                      std::size_t max_mwe_tokens) {
  return static_rows(tagged, tweet, store.dim(), max_mwe_tokens,
                     [&](const std::string& token) -> const Vector& { return store.lookup(token); });
}

std::pair<Tensor, std::size_t> mwe_embedding_sequence(const TaggedSentence& tagged,
                                                      const CleanTweet& tweet,
                                                      std::size_t dim,
                                                      std::uint64_t seed,
                                                      std::size_t max_mwe_tokens) {
  return static_rows(tagged, tweet, dim, max_mwe_tokens,
                     [&](const std::string& token) { return synth_vector(token, dim, seed); });
}

std::pair<Tensor, std::size_t> mwe_embedding_sequence(const TaggedSentence& tagged,
                                                      const CleanTweet& tweet,
                                                      const ContextualVectorStore& store,
                                                      std::size_t max_mwe_tokens) {
  Tensor m({max_mwe_tokens, store.dim()});
  if (tagged.matches.empty()) return {std::move(m), 0};
  const auto* entry = store.find(tweet.id);
  if (!entry) throw DataError("contextual vectors missing for tweet '" + tweet.id + "'");

  std::size_t filled = 0;
  for (std::size_t s = 0; s < entry->tokens.size() && filled < max_mwe_tokens; ++s) {
    const auto word = entry->word_index[s];
    if (word >= tagged.tags.size()) {
      throw DataError("tweet '" + tweet.id + "': word_index " + std::to_string(word) + " beyond " +
                      std::to_string(tagged.tags.size()) + " cleaned words");
    }
    if (tagged.tags[word].category == MweCategory::NoMwe) continue;
    put_row(m, filled++, entry->vecs[s]);
  }
  return {std::move(m), filled};
}

PreparedTweet prepare_tweet(const RawTweet& tweet, const Lexicon& lexicon,
                            const CategoryGroup& group, const LemmaDictionary& dictionary) {
  PreparedTweet out;
  out.clean = preprocess(tweet, dictionary);
  out.tagged = tag_sentence(out.clean.lemmas, lexicon, group);
  return out;
}

ExampleFeatures featurize_tweet(const PreparedTweet& tweet, const CategoryGroup& group,
                                const FeatureSources& sources, const FeatureLimits& limits) {
  const auto& clean = tweet.clean;
  ExampleFeatures x;
  x.id = clean.id;
  x.label = clean.label;
  x.empty_text = clean.surface_tokens.empty();
  x.match_count = tweet.tagged.matches.size();
  x.onehot = onehot_sequence(tweet.tagged, group, limits.max_tokens);

  switch (sources.mode) {
    case EmbeddingMode::Static:
      std::tie(x.mwe_embeds, x.mwe_len) =
          sources.words ? mwe_embedding_sequence(tweet.tagged, clean, *sources.words, limits.max_mwe_tokens)
                        : mwe_embedding_sequence(tweet.tagged, clean, sources.synthetic_word_dim,
                                                 sources.synthetic_seed, limits.max_mwe_tokens);
      break;
    case EmbeddingMode::Contextual:
      if (!sources.contextual) throw DataError("contextual mode needs a contextual vector store");
      std::tie(x.mwe_embeds, x.mwe_len) =
          mwe_embedding_sequence(tweet.tagged, clean, *sources.contextual, limits.max_mwe_tokens);
      break;
    case EmbeddingMode::SentenceOnly:
      x.mwe_embeds = Tensor({limits.max_mwe_tokens, sources.word_dim()});
      x.mwe_len = 0;
      break;
  }

  const auto s_dim = sources.sentence_dim();
  x.sentence_vec = Tensor({s_dim});
  if (sources.sentences) {
    const auto* vec = sources.sentences->find(clean.id);
    if (!vec) throw DataError("sentence vector missing for tweet '" + clean.id + "'");
    for (std::size_t i = 0; i < s_dim; ++i) x.sentence_vec[i] = (*vec)[i];
  } else {
    const auto vec = synth_vector(clean.id, s_dim, sources.synthetic_seed);
    for (std::size_t i = 0; i < s_dim; ++i) x.sentence_vec[i] = vec[i];
  }
  return x;
}

std::vector<ExampleFeatures> assemble_dataset(std::span<const RawTweet> corpus,
                                              const Lexicon& lexicon,
                                              const CategoryGroup& group,
                                              const LemmaDictionary& dictionary,
                                              const FeatureSources& sources,
                                              const FeatureLimits& limits) {
  std::vector<ExampleFeatures> out;
  out.reserve(corpus.size());
  for (const auto& tweet : corpus) {
    try {
      out.push_back(featurize_tweet(prepare_tweet(tweet, lexicon, group, dictionary), group, sources, limits));
    } catch (const DataError& e) {
      const std::string what = e.what();
      if (what.find("'" + tweet.id + "'") != std::string::npos) throw;
      throw DataError("tweet '" + tweet.id + "': " + what);
    }
  }
  return out;
}

}  // namespace mwehsd
