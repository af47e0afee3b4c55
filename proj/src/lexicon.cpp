#include "mwehsd/lexicon.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mwehsd/error.hpp"
#include "mwehsd/textprep.hpp"

namespace mwehsd {

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Validation shared by the constructor and the loader; returns a message or "".
std::string entry_problem(const LexiconEntry& e) {
  if (e.category == MweCategory::NoMwe) return "entry category cannot be NoMwe";
  if (e.lemmas.size() < 2) return "entry has fewer than 2 lemmas";
  for (const auto& l : e.lemmas) {
    if (l.empty()) return "entry has an empty lemma";
  }
  return {};
}

}  // namespace

Lexicon::Lexicon(std::vector<LexiconEntry> entries) : entries_(std::move(entries)) {
  std::set<std::pair<std::vector<std::string>, MweCategory>> seen;
  for (std::size_t id = 0; id < entries_.size(); ++id) {
    auto& e = entries_[id];
    for (auto& l : e.lemmas) l = to_lower_ascii(l);
    if (auto problem = entry_problem(e); !problem.empty()) {
      throw DataError("lexicon entry " + std::to_string(id) + ": " + problem);
    }
    if (!seen.emplace(e.lemmas, e.category).second) {
      throw DataError("lexicon entry " + std::to_string(id) + ": duplicate entry '" + join(e.lemmas, ' ') +
                      "' (" + std::string(category_name(e.category)) + ")");
    }
    index_[e.lemmas.front()].push_back(id);
  }
}

std::span<const std::size_t> Lexicon::starting_with(std::string_view lemma) const {
  auto it = index_.find(lemma);
  if (it == index_.end()) return {};
  return it->second;
}

Lexicon load_lexicon(std::istream& in) {
  std::vector<LexiconEntry> entries;
  std::set<std::pair<std::vector<std::string>, MweCategory>> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;

    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw LoadError(lineno, "expected '<lemmas>\\t<category>'");
    const auto cat_name = trim(std::string_view(line).substr(tab + 1));
    const auto category = parse_category(cat_name);
    if (!category || *category == MweCategory::NoMwe) {
      throw LoadError(lineno, "unknown category '" + std::string(cat_name) + "'");
    }

    LexiconEntry entry;
    entry.category = *category;
    std::istringstream lemmas(line.substr(0, tab));
    for (std::string lemma; lemmas >> lemma;) entry.lemmas.push_back(to_lower_ascii(lemma));
    if (auto problem = entry_problem(entry); !problem.empty()) throw LoadError(lineno, problem);
    if (!seen.emplace(entry.lemmas, entry.category).second) {
      throw LoadError(lineno, "duplicate entry '" + join(entry.lemmas, ' ') + "'");
    }
    entries.push_back(std::move(entry));
  }
  return Lexicon(std::move(entries));
}

Lexicon load_lexicon_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open lexicon '" + path.string() + "'");
  return load_lexicon(in);
}

void write_lexicon(std::ostream& out, const Lexicon& lexicon) {
  for (const auto& e : lexicon.entries()) {
    out << join(e.lemmas, ' ') << '\t' << category_name(e.category) << '\n';
  }
}

std::set<MweCategory> filter_categories_by_stats(const CategoryStatsTable& stats,
                                                 std::size_t min_occurrences,
                                                 double max_both_share) {
  std::set<MweCategory> kept;
  for (const auto& [category, s] : stats) {
    const auto total = s.total();
    if (total == 0 || total <= min_occurrences) continue;
    // Inclusive: a share exactly at the threshold is kept.
    const double share = static_cast<double>(s.both) / static_cast<double>(total);
    if (share <= max_both_share) kept.insert(category);
  }
  return kept;
}

}  // namespace mwehsd
