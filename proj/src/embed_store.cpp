#include "mwehsd/embed_store.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mwehsd/error.hpp"
#include "mwehsd/random.hpp"

namespace mwehsd {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const auto b = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > b) out.push_back(line.substr(b, i - b));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& value) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  return ec == std::errc() && ptr == end;
}

nlohmann::json parse_json_line(const std::string& line, std::size_t lineno) {
  try {
    return nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw LoadError(lineno, std::string("invalid JSON: ") + e.what());
  }
}

std::string id_field(const nlohmann::json& row, std::size_t lineno) {
  if (!row.contains("id") || !row["id"].is_string()) throw LoadError(lineno, "missing string field 'id'");
  return row["id"].get<std::string>();
}

Vector vector_field(const nlohmann::json& v, std::size_t lineno, const char* what) {
  if (!v.is_array()) throw LoadError(lineno, std::string(what) + " must be an array of numbers");
  Vector out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw LoadError(lineno, std::string(what) + " must be an array of numbers");
    out.push_back(x.get<float>());
  }
  return out;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

WordVectorStore::WordVectorStore(std::size_t dim) : dim_(dim), zero_(dim, 0.0f) {
  if (dim == 0) throw DataError("word vector dimension must be positive");
}

bool WordVectorStore::contains(std::string_view token) const { return table_.find(token) != table_.end(); }

const Vector& WordVectorStore::lookup(std::string_view token) const {
  auto it = table_.find(token);
  return it == table_.end() ? zero_ : it->second;
}

void WordVectorStore::insert(std::string token, Vector vec) {
  if (vec.size() != dim_) {
    throw DataError("vector for '" + token + "' has " + std::to_string(vec.size()) + " values, expected " +
                    std::to_string(dim_));
  }
  if (!table_.emplace(token, std::move(vec)).second) throw DataError("duplicate token '" + token + "'");
}

WordVectorStore load_word_vectors(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t count = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    const auto head = split_ws(line);
    if (head.size() != 2 || !parse_number(head[0], count) || !parse_number(head[1], dim) || dim == 0) {
      throw LoadError(lineno, "expected header '<count> <dim>'");
    }
    break;
  }
  if (dim == 0) throw LoadError(lineno, "missing header '<count> <dim>'");

  WordVectorStore store(dim);
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    const auto fields = split_ws(line);
    if (fields.size() != dim + 1) {
      throw LoadError(lineno, "expected " + std::to_string(dim) + " values, got " +
                                  std::to_string(fields.size() - 1));
    }
    Vector vec(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (!parse_number(fields[i + 1], vec[i])) {
        throw LoadError(lineno, "bad number '" + std::string(fields[i + 1]) + "'");
      }
    }
    try {
      store.insert(std::string(fields[0]), std::move(vec));
    } catch (const DataError& e) {
      throw LoadError(lineno, e.what());
    }
  }
  if (store.size() != count) {
    throw DataError("header declares " + std::to_string(count) + " vectors, found " +
                    std::to_string(store.size()));
  }
  return store;
}

WordVectorStore load_word_vectors_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open word vectors '" + path.string() + "'");
  return load_word_vectors(in);
}

void write_word_vectors(std::ostream& out, const WordVectorStore& store) {
  out << store.size() << ' ' << store.dim() << '\n';
  char buf[32];
  for (const auto& [token, vec] : store.table()) {
    out << token;
    for (float v : vec) {
      std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(v));
      out << ' ' << buf;
    }
    out << '\n';
  }
}

const Vector* SentenceVectorStore::find(std::string_view id) const {
  auto it = table_.find(id);
  return it == table_.end() ? nullptr : &it->second;
}

void SentenceVectorStore::insert(std::string id, Vector vec) {
  if (vec.empty()) throw DataError("empty sentence vector for '" + id + "'");
  if (table_.empty()) dim_ = vec.size();
  if (vec.size() != dim_) {
    throw DataError("sentence vector for '" + id + "' has dimension " + std::to_string(vec.size()) +
                    ", expected " + std::to_string(dim_));
  }
  if (!table_.emplace(id, std::move(vec)).second) throw DataError("duplicate id '" + id + "'");
}

SentenceVectorStore load_sentence_vectors(std::istream& in) {
  SentenceVectorStore store;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    const auto row = parse_json_line(line, lineno);
    auto id = id_field(row, lineno);
    if (!row.contains("vec")) throw LoadError(lineno, "missing field 'vec'");
    try {
      store.insert(std::move(id), vector_field(row["vec"], lineno, "vec"));
    } catch (const LoadError&) {
      throw;
    } catch (const DataError& e) {
      throw LoadError(lineno, e.what());
    }
  }
  return store;
}

SentenceVectorStore load_sentence_vectors_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open sentence vectors '" + path.string() + "'");
  return load_sentence_vectors(in);
}

const ContextualEntry* ContextualVectorStore::find(std::string_view id) const {
  auto it = table_.find(id);
  return it == table_.end() ? nullptr : &it->second;
}

void ContextualVectorStore::insert(std::string id, ContextualEntry entry) {
  if (entry.tokens.size() != entry.word_index.size() || entry.tokens.size() != entry.vecs.size()) {
    throw DataError("tweet '" + id + "': tokens, word_index and vecs differ in length");
  }
  if (!std::is_sorted(entry.word_index.begin(), entry.word_index.end())) {
    throw DataError("tweet '" + id + "': word_index must be non-decreasing");
  }
  for (const auto& v : entry.vecs) {
    if (v.empty()) throw DataError("tweet '" + id + "': empty vector");
    if (dim_ == 0) dim_ = v.size();
    if (v.size() != dim_) {
      throw DataError("tweet '" + id + "': vector dimension " + std::to_string(v.size()) + ", expected " +
                      std::to_string(dim_));
    }
  }
  if (!table_.emplace(id, std::move(entry)).second) throw DataError("duplicate id '" + id + "'");
}

ContextualVectorStore load_contextual_vectors(std::istream& in) {
  ContextualVectorStore store;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    const auto row = parse_json_line(line, lineno);
    auto id = id_field(row, lineno);
    for (const char* key : {"tokens", "word_index", "vecs"}) {
      if (!row.contains(key) || !row[key].is_array()) throw LoadError(lineno, std::string("missing array '") + key + "'");
    }
    ContextualEntry entry;
    try {
      for (const auto& t : row["tokens"]) entry.tokens.push_back(t.get<std::string>());
      for (const auto& w : row["word_index"]) entry.word_index.push_back(w.get<std::size_t>());
    } catch (const nlohmann::json::exception& e) {
      throw LoadError(lineno, std::string("bad tokens/word_index: ") + e.what());
    }
    for (const auto& v : row["vecs"]) entry.vecs.push_back(vector_field(v, lineno, "vecs"));
    try {
      store.insert(std::move(id), std::move(entry));
    } catch (const DataError& e) {
      throw LoadError(lineno, e.what());
    }
  }
  return store;
}

ContextualVectorStore load_contextual_vectors_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open contextual vectors '" + path.string() + "'");
  return load_contextual_vectors(in);
}

std::uint64_t stable_hash(std::string_view key) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

Vector synth_vector(std::string_view key, std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw std::invalid_argument("synth_vector: dim must be positive");
  SplitMix64 seeder(seed);
  SplitMix64 rng(stable_hash(key) ^ seeder.next());
  std::vector<double> raw(dim);
  double norm2 = 0.0;
  for (auto& v : raw) {
    v = rng.uniform(-1.0, 1.0);
    norm2 += v * v;
  }
  Vector out(dim);
  if (norm2 == 0.0) {
    out[0] = 1.0f;
    return out;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (std::size_t i = 0; i < dim; ++i) out[i] = static_cast<float>(raw[i] * inv);
  return out;
}

}  // namespace mwehsd
