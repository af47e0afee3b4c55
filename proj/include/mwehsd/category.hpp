#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mwehsd {

/// Lexical MWE categories of the lexicon, plus the NoMwe tag for tokens
/// outside any selected occurrence. NoMwe never appears in a lexicon entry.
enum class MweCategory : std::uint8_t {
  Adjective,
  Adverb,
  Discourse,
  Nominal,
  AdpositionPhrase,
  InherentlyAdpositionalVerb,
  FullLightVerbConstruction,
  VerbalIdiom,
  FullVerbParticle,
  SemiVerbParticle,
  Auxiliary,
  CoordinatingConjunction,
  Determiner,
  InfinitiveMarker,
  Adposition,
  NonPossessivePronoun,
  SubordinatingConjunction,
  CauseLightVerbConstruction,
  Symbol,
  Interjection,
  NoMwe,
};

inline constexpr std::size_t kLexicalCategoryCount = 20;

/// The 20 lexical categories in declaration order (NoMwe excluded).
const std::array<MweCategory, kLexicalCategoryCount>& lexical_categories();

std::string_view category_name(MweCategory category);

/// Exact-label lookup; "NoMwe" is accepted so tag files can be read back.
std::optional<MweCategory> parse_category(std::string_view name);

enum class GroupSelector { MweAll, Mwe5, Vmwe5, Mwe5Vmwe5 };

std::string_view selector_name(GroupSelector selector);
std::optional<GroupSelector> parse_selector(std::string_view name);

/// A set of active categories with a fixed one-hot column layout:
/// categories sorted by name, NoMwe in the last column.
class CategoryGroup {
 public:
  CategoryGroup() = default;
  CategoryGroup(std::string name, std::vector<MweCategory> categories);

  const std::string& name() const noexcept { return name_; }
  const std::vector<MweCategory>& categories() const noexcept { return categories_; }
  std::size_t size() const noexcept { return categories_.size(); }
  std::size_t columns() const noexcept { return categories_.size() + 1; }

  bool contains(MweCategory category) const;
  /// Column of `category`; inactive categories and NoMwe map to the last column.
  std::size_t column_of(MweCategory category) const;

 private:
  std::string name_;
  std::vector<MweCategory> categories_;
  std::array<std::int16_t, kLexicalCategoryCount> column_{};
};

CategoryGroup category_group(GroupSelector selector);

}  // namespace mwehsd
