#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "mwehsd/category.hpp"
#include "mwehsd/embed_store.hpp"
#include "mwehsd/example.hpp"
#include "mwehsd/lexicon.hpp"
#include "mwehsd/mwe_tagger.hpp"
#include "mwehsd/textprep.hpp"

namespace mwehsd {

struct FeatureLimits {
  std::size_t max_tokens = 64;
  std::size_t max_mwe_tokens = 16;
};

enum class EmbeddingMode { Static, Contextual, SentenceOnly };

std::string_view embedding_mode_name(EmbeddingMode mode);
EmbeddingMode parse_embedding_mode(std::string_view name);

/// Where each branch gets its vectors. A null store means "synthesize":
/// synth_vector keyed on the lowercased token (words) or the tweet id
/// (sentences), with the given dimension and seed.
struct FeatureSources {
  EmbeddingMode mode = EmbeddingMode::Static;
  const WordVectorStore* words = nullptr;
  const ContextualVectorStore* contextual = nullptr;
  const SentenceVectorStore* sentences = nullptr;
  std::size_t synthetic_word_dim = 16;
  std::size_t synthetic_sentence_dim = 32;
  std::uint64_t synthetic_seed = 0;

  std::size_t word_dim() const;
  std::size_t sentence_dim() const;
};

/// Row t is the one-hot of token t's column for t < min(len, max_tokens);
/// remaining rows are zero.
Tensor onehot_sequence(const TaggedSentence& tagged, const CategoryGroup& group, std::size_t max_tokens);

/// One row per MWE-member token in sentence order, keyed on the lowercased
/// surface token. Returns the matrix and the number of filled rows.
std::pair<Tensor, std::size_t> mwe_embedding_sequence(const TaggedSentence& tagged,
                                                      const CleanTweet& tweet,
                                                      const WordVectorStore& store,
                                                      std::size_t max_mwe_tokens);

/// Contextual variant: one row per subword of each MWE-member token.
/// Throws DataError naming the tweet when the store lacks it.
std::pair<Tensor, std::size_t> mwe_embedding_sequence(const TaggedSentence& tagged,
                                                      const CleanTweet& tweet,
                                                      const ContextualVectorStore& store,
                                                      std::size_t max_mwe_tokens);

/// Synthetic static variant.
std::pair<Tensor, std::size_t> mwe_embedding_sequence(const TaggedSentence& tagged,
                                                      const CleanTweet& tweet,
                                                      std::size_t dim,
                                                      std::uint64_t seed,
                                                      std::size_t max_mwe_tokens);

struct PreparedTweet {
  CleanTweet clean;
  TaggedSentence tagged;
};

PreparedTweet prepare_tweet(const RawTweet& tweet, const Lexicon& lexicon,
                            const CategoryGroup& group, const LemmaDictionary& dictionary);

ExampleFeatures featurize_tweet(const PreparedTweet& tweet, const CategoryGroup& group,
                                const FeatureSources& sources, const FeatureLimits& limits);

/// Preprocess, tag and featurize each tweet, preserving corpus order.
std::vector<ExampleFeatures> assemble_dataset(std::span<const RawTweet> corpus,
                                              const Lexicon& lexicon,
                                              const CategoryGroup& group,
                                              const LemmaDictionary& dictionary,
                                              const FeatureSources& sources,
                                              const FeatureLimits& limits);

}  // namespace mwehsd
