#include "mwehsd/category.hpp"

#include <algorithm>
#include <stdexcept>

namespace mwehsd {

namespace {

constexpr std::array<std::string_view, kLexicalCategoryCount + 1> kNames = {
    "Adjective",
    "Adverb",
    "Discourse",
    "Nominal",
    "AdpositionPhrase",
    "InherentlyAdpositionalVerb",
    "FullLightVerbConstruction",
    "VerbalIdiom",
    "FullVerbParticle",
    "SemiVerbParticle",
    "Auxiliary",
    "CoordinatingConjunction",
    "Determiner",
    "InfinitiveMarker",
    "Adposition",
    "NonPossessivePronoun",
    "SubordinatingConjunction",
    "CauseLightVerbConstruction",
    "Symbol",
    "Interjection",
    "NoMwe",
};

}  // namespace

const std::array<MweCategory, kLexicalCategoryCount>& lexical_categories() {
  static const auto all = [] {
    std::array<MweCategory, kLexicalCategoryCount> out{};
    for (std::size_t i = 0; i < kLexicalCategoryCount; ++i) out[i] = static_cast<MweCategory>(i);
    return out;
  }();
  return all;
}

std::string_view category_name(MweCategory category) {
  return kNames.at(static_cast<std::size_t>(category));
}

std::optional<MweCategory> parse_category(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<MweCategory>(i);
  }
  return std::nullopt;
}

std::string_view selector_name(GroupSelector selector) {
  switch (selector) {
    case GroupSelector::MweAll: return "mweall";
    case GroupSelector::Mwe5: return "mwe5";
    case GroupSelector::Vmwe5: return "vmwe5";
    case GroupSelector::Mwe5Vmwe5: return "mwe5_vmwe5";
  }
  return "mweall";
}

std::optional<GroupSelector> parse_selector(std::string_view name) {
  for (auto s : {GroupSelector::MweAll, GroupSelector::Mwe5, GroupSelector::Vmwe5, GroupSelector::Mwe5Vmwe5}) {
    if (selector_name(s) == name) return s;
  }
  return std::nullopt;
}

CategoryGroup::CategoryGroup(std::string name, std::vector<MweCategory> categories)
    : name_(std::move(name)), categories_(std::move(categories)) {
  if (std::find(categories_.begin(), categories_.end(), MweCategory::NoMwe) != categories_.end()) {
    throw std::invalid_argument("NoMwe cannot be an active category");
  }
  std::sort(categories_.begin(), categories_.end(),
            [](MweCategory a, MweCategory b) { return category_name(a) < category_name(b); });
  categories_.erase(std::unique(categories_.begin(), categories_.end()), categories_.end());
  column_.fill(-1);
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    column_[static_cast<std::size_t>(categories_[i])] = static_cast<std::int16_t>(i);
  }
}

bool CategoryGroup::contains(MweCategory category) const {
  if (category == MweCategory::NoMwe) return false;
  return column_[static_cast<std::size_t>(category)] >= 0;
}

std::size_t CategoryGroup::column_of(MweCategory category) const {
  if (!contains(category)) return categories_.size();
  return static_cast<std::size_t>(column_[static_cast<std::size_t>(category)]);
}

CategoryGroup category_group(GroupSelector selector) {
  using C = MweCategory;
  const std::vector<C> mwe5{C::Adjective, C::Adverb, C::Discourse, C::Nominal, C::AdpositionPhrase};
  const std::vector<C> vmwe5{C::InherentlyAdpositionalVerb, C::FullLightVerbConstruction, C::VerbalIdiom,
                             C::FullVerbParticle, C::SemiVerbParticle};
  switch (selector) {
    case GroupSelector::Mwe5:
      return {"mwe5", mwe5};
    case GroupSelector::Vmwe5:
      return {"vmwe5", vmwe5};
    case GroupSelector::Mwe5Vmwe5: {
      auto both = mwe5;
      both.insert(both.end(), vmwe5.begin(), vmwe5.end());
      return {"mwe5_vmwe5", both};
    }
    case GroupSelector::MweAll:
      break;
  }
  // Symbol and Interjection never occur in the reference training data.
  std::vector<C> all;
  for (auto c : lexical_categories()) {
    if (c != C::Symbol && c != C::Interjection) all.push_back(c);
  }
  return {"mweall", all};
}

}  // namespace mwehsd
