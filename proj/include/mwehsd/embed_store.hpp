#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mwehsd {

using Vector = std::vector<float>;

/// Static token -> vector table. Missing tokens read as the zero vector.
class WordVectorStore {
 public:
  WordVectorStore() = default;
  explicit WordVectorStore(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return table_.size(); }
  bool contains(std::string_view token) const;
  const Vector& lookup(std::string_view token) const;

  /// Throws DataError on a dimension mismatch or a duplicate token.
  void insert(std::string token, Vector vec);
  const std::map<std::string, Vector, std::less<>>& table() const noexcept { return table_; }

 private:
  std::size_t dim_ = 0;
  std::map<std::string, Vector, std::less<>> table_;
  Vector zero_;
};

/// Header `<count> <dim>`, then `<token> <v1> ... <vdim>` per line.
WordVectorStore load_word_vectors(std::istream& in);
WordVectorStore load_word_vectors_file(const std::filesystem::path& path);
/// Writes the text format with 9 significant digits, which round-trips floats.
void write_word_vectors(std::ostream& out, const WordVectorStore& store);

/// Per-tweet sentence vectors from JSONL `{"id", "vec"}`.
class SentenceVectorStore {
 public:
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return table_.size(); }
  const Vector* find(std::string_view id) const;
  void insert(std::string id, Vector vec);

 private:
  std::size_t dim_ = 0;
  std::map<std::string, Vector, std::less<>> table_;
};

SentenceVectorStore load_sentence_vectors(std::istream& in);
SentenceVectorStore load_sentence_vectors_file(const std::filesystem::path& path);

/// Subword vectors of one tweet. word_index[i] is the cleaned-word position
/// that subword i belongs to.
struct ContextualEntry {
  std::vector<std::string> tokens;
  std::vector<std::size_t> word_index;
  std::vector<Vector> vecs;
};

class ContextualVectorStore {
 public:
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return table_.size(); }
  const ContextualEntry* find(std::string_view id) const;
  void insert(std::string id, ContextualEntry entry);

 private:
  std::size_t dim_ = 0;
  std::map<std::string, ContextualEntry, std::less<>> table_;
};

/// JSONL `{"id", "tokens", "word_index", "vecs"}`.
ContextualVectorStore load_contextual_vectors(std::istream& in);
ContextualVectorStore load_contextual_vectors_file(const std::filesystem::path& path);

/// Stable 64-bit FNV-1a hash of a byte string.
std::uint64_t stable_hash(std::string_view key) noexcept;

/// Deterministic unit-norm pseudo-random vector for (key, seed). Uses only
/// integer mixing and IEEE arithmetic, so output is platform independent.
Vector synth_vector(std::string_view key, std::size_t dim, std::uint64_t seed);

}  // namespace mwehsd
