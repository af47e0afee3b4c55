#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mwehsd/mwe_tagger.hpp"

namespace mwehsd {

/// K x K counts, rows = true class, columns = predicted class.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t classes = 0) : k_(classes), counts_(classes * classes, 0) {}
  ConfusionMatrix(std::size_t classes, std::vector<std::size_t> counts);

  std::size_t classes() const noexcept { return k_; }
  std::size_t& at(std::size_t truth, std::size_t predicted) { return counts_[truth * k_ + predicted]; }
  std::size_t at(std::size_t truth, std::size_t predicted) const { return counts_[truth * k_ + predicted]; }
  std::size_t row_sum(std::size_t truth) const;
  std::size_t column_sum(std::size_t predicted) const;
  std::size_t total() const;

  /// Each nonempty row scaled to sum to 100; empty rows stay zero.
  std::vector<std::vector<double>> row_percentages() const;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::size_t k_;
  std::vector<std::size_t> counts_;
};

/// Throws std::invalid_argument on length mismatch or an out-of-range label.
ConfusionMatrix confusion_matrix(std::span<const std::size_t> y_true,
                                 std::span<const std::size_t> y_pred,
                                 std::size_t classes);

/// Per-class F1 with zero-denominator precision/recall/F1 taken as 0.
std::vector<double> per_class_f1(const ConfusionMatrix& m);
double macro_f1(const ConfusionMatrix& m);

struct EvalReport {
  ConfusionMatrix confusion;
  std::vector<double> per_class_f1;
  double macro_f1 = 0.0;
  std::size_t n_examples = 0;
  std::string subset_variant = "all";  // "all" or "mwe"
};

EvalReport evaluate(std::span<const std::size_t> y_true,
                    std::span<const std::size_t> y_pred,
                    std::size_t classes,
                    std::string subset_variant = "all");

struct MatchedPairResult {
  std::size_t a_wrong_b_right = 0;  // n01
  std::size_t a_right_b_wrong = 0;  // n10
  double p_value = 1.0;
  bool significant = false;
};

/// Exact two-sided sign test on discordant pairs (success probability 1/2).
MatchedPairResult matched_pair_test(std::span<const bool> correct_a,
                                    std::span<const bool> correct_b,
                                    double alpha);

/// The same test from discordant counts directly.
MatchedPairResult matched_pair_test(std::size_t n01, std::size_t n10, double alpha);

/// Indices of sentences with at least one selected match.
std::vector<std::size_t> mwe_subset(std::span<const TaggedSentence> tagged);

}  // namespace mwehsd
