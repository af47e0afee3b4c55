#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mwehsd {

struct RawTweet {
  std::string id;
  std::string text;
  int label = 0;
};

struct CleanTweet {
  std::string id;
  std::vector<std::string> surface_tokens;  // original case
  std::vector<std::string> lemmas;          // lowercase, parallel to surface_tokens
  int label = 0;
};

/// Drops mention, hashtag and URL tokens and collapses whitespace.
/// Case is preserved.
std::string clean_text(std::string_view text);

/// Whitespace split; leading and trailing punctuation characters become
/// tokens of their own. Inner punctuation ("don't") stays attached.
std::vector<std::string> tokenize(std::string_view text);

std::string to_lower_ascii(std::string_view s);

/// Lowercase token -> lemma table loaded from `token<TAB>lemma` lines.
class LemmaDictionary {
 public:
  LemmaDictionary() = default;
  explicit LemmaDictionary(std::map<std::string, std::string, std::less<>> table);

  const std::string* find(std::string_view token) const;
  bool is_known_lemma(std::string_view lemma) const;
  std::size_t size() const noexcept { return table_.size(); }

 private:
  std::map<std::string, std::string, std::less<>> table_;
  std::set<std::string, std::less<>> lemmas_;
};

LemmaDictionary load_lemma_dictionary(std::istream& in);
LemmaDictionary load_lemma_dictionary_file(const std::filesystem::path& path);

/// Lemma of one token: lowercase, dictionary lookup, then suffix rules.
std::string lemmatize_word(std::string_view token, const LemmaDictionary& dictionary);
std::vector<std::string> lemmatize(const std::vector<std::string>& tokens,
                                   const LemmaDictionary& dictionary);

CleanTweet preprocess(const RawTweet& tweet, const LemmaDictionary& dictionary);

/// At least two tokens survive cleaning.
bool is_trainable(const CleanTweet& tweet);
bool is_trainable(const RawTweet& tweet);

}  // namespace mwehsd
