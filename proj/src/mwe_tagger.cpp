#include "mwehsd/mwe_tagger.hpp"

#include <algorithm>
#include <tuple>

namespace mwehsd {

namespace {

// Extends a partial occurrence one lemma at a time. Each step may skip up
// to the remaining gap budget.
void extend(std::span<const std::string> lemmas, const LexiconEntry& entry, std::size_t entry_id,
            std::size_t budget, std::vector<std::size_t>& positions, std::size_t gaps,
            std::vector<MweMatch>& out) {
  const auto next = positions.size();
  if (next == entry.lemmas.size()) {
    out.push_back({entry_id, entry.category, positions, gaps});
    return;
  }
  const auto prev = positions.back();
  for (std::size_t skip = 0; gaps + skip <= budget; ++skip) {
    const auto q = prev + 1 + skip;
    if (q >= lemmas.size()) break;
    if (lemmas[q] != entry.lemmas[next]) continue;
    positions.push_back(q);
    extend(lemmas, entry, entry_id, budget, positions, gaps + skip, out);
    positions.pop_back();
  }
}

}  // namespace

std::vector<MweMatch> find_candidate_matches(std::span<const std::string> lemmas,
                                             const Lexicon& lexicon,
                                             std::size_t gap_budget) {
  std::vector<MweMatch> out;
  std::vector<std::size_t> positions;
  for (std::size_t start = 0; start < lemmas.size(); ++start) {
    for (const auto id : lexicon.starting_with(lemmas[start])) {
      positions.assign(1, start);
      extend(lemmas, lexicon.entry(id), id, gap_budget, positions, 0, out);
    }
  }
  std::sort(out.begin(), out.end(), [](const MweMatch& a, const MweMatch& b) {
    return std::tie(a.positions.front(), a.entry_id, a.gap_count, a.positions) <
           std::tie(b.positions.front(), b.entry_id, b.gap_count, b.positions);
  });
  return out;
}

std::vector<MweMatch> resolve_overlaps(std::vector<MweMatch> candidates, const Lexicon& lexicon) {
  std::stable_sort(candidates.begin(), candidates.end(), [&](const MweMatch& a, const MweMatch& b) {
    const auto la = lexicon.entry(a.entry_id).lemmas.size();
    const auto lb = lexicon.entry(b.entry_id).lemmas.size();
    if (la != lb) return la > lb;
    return std::tie(a.gap_count, a.positions.front(), a.entry_id, a.positions) <
           std::tie(b.gap_count, b.positions.front(), b.entry_id, b.positions);
  });

  std::size_t length = 0;
  for (const auto& c : candidates) length = std::max(length, c.last() + 1);
  std::vector<bool> claimed(length, false);

  std::vector<MweMatch> selected;
  for (auto& c : candidates) {
    const bool free = std::none_of(c.positions.begin(), c.positions.end(),
                                   [&](std::size_t p) { return claimed[p]; });
    if (!free) continue;
    for (auto p : c.positions) claimed[p] = true;
    selected.push_back(std::move(c));
  }
  return selected;
}

TaggedSentence tag_sentence(std::span<const std::string> lemmas,
                            const Lexicon& lexicon,
                            const CategoryGroup& active) {
  TaggedSentence out;
  out.lemmas.assign(lemmas.begin(), lemmas.end());
  out.tags.resize(lemmas.size());

  // Resolution sees every category; filtering comes after.
  auto resolved = resolve_overlaps(find_candidate_matches(lemmas, lexicon), lexicon);
  std::erase_if(resolved, [&](const MweMatch& m) { return !active.contains(m.category); });
  std::sort(resolved.begin(), resolved.end(),
            [](const MweMatch& a, const MweMatch& b) { return a.first() < b.first(); });

  for (std::size_t occ = 0; occ < resolved.size(); ++occ) {
    for (auto p : resolved[occ].positions) out.tags[p] = {resolved[occ].category, occ};
  }
  out.matches = std::move(resolved);
  return out;
}

}  // namespace mwehsd
