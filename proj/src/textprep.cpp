#include "mwehsd/textprep.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>

#include "mwehsd/error.hpp"

namespace mwehsd {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

template <typename Fn>
void for_each_word(std::string_view text, Fn&& fn) {
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const auto start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) fn(text.substr(start, i - start));
  }
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
  }
  return true;
}

bool is_marker(std::string_view word) {
  if (word.front() == '@' || word.front() == '#') return true;
  return starts_with_ci(word, "http://") || starts_with_ci(word, "https://") || starts_with_ci(word, "www.");
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// "runn" -> "run", but "fall" and "pass" keep their double letter.
std::string undouble(const std::string& stem) {
  const auto n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) && stem[n - 1] != 'l' &&
      stem[n - 1] != 's' && stem[n - 1] != 'z') {
    return stem.substr(0, n - 1);
  }
  return stem;
}

// First candidate that the dictionary knows as a lemma, else `fallback`.
std::string pick(const std::vector<std::string>& candidates, std::string fallback,
                 const LemmaDictionary& dictionary) {
  for (const auto& c : candidates) {
    if (dictionary.is_known_lemma(c)) return c;
  }
  return fallback;
}

std::string apply_suffix_rules(const std::string& w, const LemmaDictionary& dictionary) {
  if (!std::all_of(w.begin(), w.end(), is_alpha)) return w;
  const auto n = w.size();

  if (ends_with(w, "ies") && n >= 5) return w.substr(0, n - 3) + "y";
  if (ends_with(w, "ing") && n >= 6) {
    const auto stem = w.substr(0, n - 3);
    return pick({stem, stem + "e", undouble(stem)}, undouble(stem), dictionary);
  }
  if (ends_with(w, "es") && n >= 4) {
    const auto stem = w.substr(0, n - 2);
    const bool sibilant = ends_with(stem, "s") || ends_with(stem, "x") || ends_with(stem, "z") ||
                          ends_with(stem, "ch") || ends_with(stem, "sh");
    const auto with_e = w.substr(0, n - 1);
    return pick({with_e, stem}, sibilant ? stem : with_e, dictionary);
  }
  if (ends_with(w, "ed") && n >= 5) {
    const auto stem = w.substr(0, n - 2);
    return pick({stem, stem + "e", undouble(stem)}, undouble(stem), dictionary);
  }
  if (ends_with(w, "s") && n >= 4 && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is")) {
    return w.substr(0, n - 1);
  }
  return w;
}

}  // namespace

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string clean_text(std::string_view text) {
  std::string out;
  for_each_word(text, [&](std::string_view word) {
    if (is_marker(word)) return;
    if (!out.empty()) out += ' ';
    out += word;
  });
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  for_each_word(text, [&](std::string_view word) {
    std::size_t b = 0;
    std::size_t e = word.size();
    while (b < e && is_punct(word[b])) tokens.emplace_back(1, word[b++]);
    std::size_t core_end = e;
    while (core_end > b && is_punct(word[core_end - 1])) --core_end;
    if (core_end > b) tokens.emplace_back(word.substr(b, core_end - b));
    for (auto i = core_end; i < e; ++i) tokens.emplace_back(1, word[i]);
  });
  return tokens;
}

LemmaDictionary::LemmaDictionary(std::map<std::string, std::string, std::less<>> table)
    : table_(std::move(table)) {
  for (const auto& [token, lemma] : table_) lemmas_.insert(lemma);
}

const std::string* LemmaDictionary::find(std::string_view token) const {
  auto it = table_.find(token);
  return it == table_.end() ? nullptr : &it->second;
}

bool LemmaDictionary::is_known_lemma(std::string_view lemma) const { return lemmas_.contains(lemma); }

LemmaDictionary load_lemma_dictionary(std::istream& in) {
  std::map<std::string, std::string, std::less<>> table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw LoadError(lineno, "expected '<token>\\t<lemma>'");
    }
    table[to_lower_ascii(line.substr(0, tab))] = to_lower_ascii(line.substr(tab + 1));
  }
  return LemmaDictionary(std::move(table));
}

LemmaDictionary load_lemma_dictionary_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lemma dictionary '" + path.string() + "'");
  return load_lemma_dictionary(in);
}

std::string lemmatize_word(std::string_view token, const LemmaDictionary& dictionary) {
  auto w = to_lower_ascii(token);
  if (const auto* hit = dictionary.find(w)) return *hit;
  return apply_suffix_rules(w, dictionary);
}

std::vector<std::string> lemmatize(const std::vector<std::string>& tokens, const LemmaDictionary& dictionary) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(lemmatize_word(t, dictionary));
  return out;
}

CleanTweet preprocess(const RawTweet& tweet, const LemmaDictionary& dictionary) {
  CleanTweet out;
  out.id = tweet.id;
  out.label = tweet.label;
  out.surface_tokens = tokenize(clean_text(tweet.text));
  out.lemmas = lemmatize(out.surface_tokens, dictionary);
  return out;
}

bool is_trainable(const CleanTweet& tweet) { return tweet.surface_tokens.size() >= 2; }

bool is_trainable(const RawTweet& tweet) { return tokenize(clean_text(tweet.text)).size() >= 2; }

}  // namespace mwehsd
