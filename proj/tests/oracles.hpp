#pragma once

// Independent reference implementations used by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "mwehsd/category.hpp"
#include "mwehsd/lexicon.hpp"
#include "mwehsd/mwe_tagger.hpp"
#include "mwehsd/random.hpp"

namespace oracle {

using mwehsd::MweCategory;

/// Exhaustive tagger: every increasing position subset of the entry's size,
/// kept when the lemmas agree and at most one token is skipped, then sorted
/// and claimed greedily.
inline mwehsd::TaggedSentence brute_force_tag(const std::vector<std::string>& lemmas,
                                              const mwehsd::Lexicon& lexicon,
                                              const mwehsd::CategoryGroup& active) {
  const std::size_t n = lemmas.size();
  std::vector<mwehsd::MweMatch> all;
  for (std::size_t id = 0; id < lexicon.size(); ++id) {
    const auto& e = lexicon.entry(id);
    const std::size_t k = e.lemmas.size();
    if (k > n || n >= 32) continue;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
      std::vector<std::size_t> pos;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) pos.push_back(i);
      }
      bool same = true;
      for (std::size_t j = 0; j < k; ++j) same = same && lemmas[pos[j]] == e.lemmas[j];
      if (!same) continue;
      const std::size_t gaps = pos.back() - pos.front() + 1 - k;
      if (gaps > 1) continue;
      all.push_back({id, e.category, pos, gaps});
    }
  }
  std::sort(all.begin(), all.end(), [](const mwehsd::MweMatch& a, const mwehsd::MweMatch& b) {
    return std::make_tuple(b.positions.size(), a.gap_count, a.positions.front(), a.entry_id, a.positions) <
           std::make_tuple(a.positions.size(), b.gap_count, b.positions.front(), b.entry_id, b.positions);
  });
  std::vector<bool> claimed(n, false);
  std::vector<mwehsd::MweMatch> kept;
  for (const auto& m : all) {
    bool free = true;
    for (auto p : m.positions) free = free && !claimed[p];
    if (!free) continue;
    for (auto p : m.positions) claimed[p] = true;
    if (active.contains(m.category)) kept.push_back(m);
  }
  std::sort(kept.begin(), kept.end(),
            [](const mwehsd::MweMatch& a, const mwehsd::MweMatch& b) { return a.positions < b.positions; });
  mwehsd::TaggedSentence out;
  out.lemmas = lemmas;
  out.tags.assign(n, {});
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (auto p : kept[i].positions) out.tags[p] = {kept[i].category, i};
  }
  out.matches = kept;
  return out;
}

struct TaggerInstance {
  mwehsd::Lexicon lexicon;
  std::vector<std::string> lemmas;
  mwehsd::CategoryGroup active;
};

/// Lexicon of at most 10 entries (2 to 4 lemmas) over a 12-lemma alphabet,
/// sentence of at most 10 tokens. Sentences are seeded with entry lemmas so
/// that overlaps and gaps are common.
inline TaggerInstance random_tagger_instance(std::uint64_t seed) {
  static const std::vector<std::string> alphabet{"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"};
  mwehsd::SplitMix64 rng(seed);
  const auto& cats = mwehsd::lexical_categories();
  std::vector<mwehsd::LexiconEntry> entries;
  std::set<std::vector<std::string>> seen;
  const auto n_entries = 1 + rng.below(10);
  while (entries.size() < n_entries) {
    std::vector<std::string> lemmas;
    const auto len = 2 + rng.below(3);
    for (std::size_t i = 0; i < len; ++i) lemmas.push_back(alphabet[rng.below(rng.below(2) ? 4 : 12)]);
    if (!seen.insert(lemmas).second) continue;
    entries.push_back({lemmas, cats[rng.below(4)]});
  }
  std::vector<std::string> sentence;
  const auto target = rng.below(11);
  while (sentence.size() < target) {
    if (rng.below(2)) {
      const auto& e = entries[rng.below(entries.size())];
      for (std::size_t j = 0; j < e.lemmas.size() && sentence.size() < target; ++j) {
        sentence.push_back(e.lemmas[j]);
        if (j + 1 < e.lemmas.size() && rng.below(4) == 0 && sentence.size() < target) {
          sentence.push_back(alphabet[rng.below(12)]);
        }
      }
    } else {
      sentence.push_back(alphabet[rng.below(rng.below(2) ? 4 : 12)]);
    }
  }
  std::vector<MweCategory> active;
  for (std::size_t c = 0; c < 4; ++c) {
    if (rng.below(3) != 0) active.push_back(cats[c]);
  }
  return {mwehsd::Lexicon(std::move(entries)), std::move(sentence), mwehsd::CategoryGroup("random", active)};
}

/// Binary logistic regression by full-batch gradient descent. Returns the
/// training accuracy.
inline double logistic_regression_accuracy(const std::vector<std::vector<double>>& x,
                                           const std::vector<int>& y, std::size_t iterations = 2000,
                                           double lr = 0.5) {
  const std::size_t d = x.empty() ? 0 : x[0].size();
  std::vector<double> w(d, 0.0);
  double b = 0.0;
  for (std::size_t it = 0; it < iterations; ++it) {
    std::vector<double> gw(d, 0.0);
    double gb = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double z = b;
      for (std::size_t j = 0; j < d; ++j) z += w[j] * x[i][j];
      const double err = 1.0 / (1.0 + std::exp(-z)) - y[i];
      for (std::size_t j = 0; j < d; ++j) gw[j] += err * x[i][j];
      gb += err;
    }
    for (std::size_t j = 0; j < d; ++j) w[j] -= lr * gw[j] / static_cast<double>(x.size());
    b -= lr * gb / static_cast<double>(x.size());
  }
  std::size_t right = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double z = b;
    for (std::size_t j = 0; j < d; ++j) z += w[j] * x[i][j];
    right += static_cast<std::size_t>((z > 0.0 ? 1 : 0) == y[i]);
  }
  return x.empty() ? 0.0 : static_cast<double>(right) / static_cast<double>(x.size());
}

/// Reference corpus counts per category (hateful only, non-hateful only, both).
inline mwehsd::CategoryStatsTable reference_category_counts() {
  return {
      {MweCategory::Adjective, {9, 8, 255}},
      {MweCategory::Adverb, {1, 5, 194}},
      {MweCategory::Discourse, {12, 15, 401}},
      {MweCategory::Nominal, {25, 36, 189}},
      {MweCategory::AdpositionPhrase, {9, 36, 134}},
      {MweCategory::InherentlyAdpositionalVerb, {11, 21, 447}},
      {MweCategory::FullLightVerbConstruction, {9, 10, 36}},
      {MweCategory::VerbalIdiom, {14, 24, 384}},
      {MweCategory::FullVerbParticle, {11, 20, 387}},
      {MweCategory::SemiVerbParticle, {6, 18, 153}},
      {MweCategory::Auxiliary, {4, 0, 475}},
      {MweCategory::CoordinatingConjunction, {1, 0, 8}},
      {MweCategory::Determiner, {1, 2, 242}},
      {MweCategory::InfinitiveMarker, {0, 0, 12}},
      {MweCategory::Adposition, {3, 13, 573}},
      {MweCategory::NonPossessivePronoun, {0, 3, 11}},
      {MweCategory::SubordinatingConjunction, {0, 0, 28}},
      {MweCategory::CauseLightVerbConstruction, {1, 0, 0}},
      {MweCategory::Symbol, {0, 0, 0}},
      {MweCategory::Interjection, {0, 0, 0}},
  };
}

}  // namespace oracle
