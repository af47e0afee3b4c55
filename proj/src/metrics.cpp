#include "mwehsd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mwehsd {

ConfusionMatrix::ConfusionMatrix(std::size_t classes, std::vector<std::size_t> counts)
    : k_(classes), counts_(std::move(counts)) {
  if (counts_.size() != k_ * k_) throw std::invalid_argument("confusion matrix: counts are not K x K");
}

std::size_t ConfusionMatrix::row_sum(std::size_t truth) const {
  std::size_t s = 0;
  for (std::size_t c = 0; c < k_; ++c) s += at(truth, c);
  return s;
}

std::size_t ConfusionMatrix::column_sum(std::size_t predicted) const {
  std::size_t s = 0;
  for (std::size_t r = 0; r < k_; ++r) s += at(r, predicted);
  return s;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t s = 0;
  for (auto v : counts_) s += v;
  return s;
}

std::vector<std::vector<double>> ConfusionMatrix::row_percentages() const {
  std::vector<std::vector<double>> out(k_, std::vector<double>(k_, 0.0));
  for (std::size_t r = 0; r < k_; ++r) {
    const auto n = row_sum(r);
    if (n == 0) continue;
    for (std::size_t c = 0; c < k_; ++c) out[r][c] = 100.0 * static_cast<double>(at(r, c)) / static_cast<double>(n);
  }
  return out;
}

ConfusionMatrix confusion_matrix(std::span<const std::size_t> y_true,
                                 std::span<const std::size_t> y_pred,
                                 std::size_t classes) {
  if (y_true.size() != y_pred.size()) {
    throw std::invalid_argument("confusion_matrix: " + std::to_string(y_true.size()) + " true labels vs " +
                                std::to_string(y_pred.size()) + " predictions");
  }
  ConfusionMatrix m(classes);
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] >= classes || y_pred[i] >= classes) {
      throw std::invalid_argument("confusion_matrix: label out of range at index " + std::to_string(i));
    }
    ++m.at(y_true[i], y_pred[i]);
  }
  return m;
}

std::vector<double> per_class_f1(const ConfusionMatrix& m) {
  std::vector<double> out(m.classes(), 0.0);
  for (std::size_t c = 0; c < m.classes(); ++c) {
    const auto tp = static_cast<double>(m.at(c, c));
    const auto predicted = m.column_sum(c);
    const auto actual = m.row_sum(c);
    const double precision = predicted ? tp / static_cast<double>(predicted) : 0.0;
    const double recall = actual ? tp / static_cast<double>(actual) : 0.0;
    out[c] = precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
  }
  return out;
}

double macro_f1(const ConfusionMatrix& m) {
  if (m.classes() == 0) return 0.0;
  const auto f1 = per_class_f1(m);
  double s = 0.0;
  for (double v : f1) s += v;
  return s / static_cast<double>(f1.size());
}

EvalReport evaluate(std::span<const std::size_t> y_true,
                    std::span<const std::size_t> y_pred,
                    std::size_t classes,
                    std::string subset_variant) {
  EvalReport r;
  r.confusion = confusion_matrix(y_true, y_pred, classes);
  r.per_class_f1 = per_class_f1(r.confusion);
  r.macro_f1 = macro_f1(r.confusion);
  r.n_examples = y_true.size();
  r.subset_variant = std::move(subset_variant);
  return r;
}

MatchedPairResult matched_pair_test(std::size_t n01, std::size_t n10, double alpha) {
  MatchedPairResult r;
  r.a_wrong_b_right = n01;
  r.a_right_b_wrong = n10;
  const auto n = n01 + n10;
  if (n == 0) {
    r.p_value = 1.0;
    r.significant = false;
    return r;
  }
  // Two-sided exact binomial tail, P(X >= max) doubled, with X ~ Bin(n, 1/2).
  const auto k = std::max(n01, n10);
  const double dn = static_cast<double>(n);
  const double log_half_n = -dn * std::numbers::ln2;
  double tail = 0.0;
  for (std::size_t i = k; i <= n; ++i) {
    const double di = static_cast<double>(i);
    tail += std::exp(std::lgamma(dn + 1.0) - std::lgamma(di + 1.0) - std::lgamma(dn - di + 1.0) + log_half_n);
  }
  r.p_value = std::min(1.0, 2.0 * tail);
  r.significant = r.p_value < alpha;
  return r;
}

MatchedPairResult matched_pair_test(std::span<const bool> correct_a,
                                    std::span<const bool> correct_b,
                                    double alpha) {
  if (correct_a.size() != correct_b.size()) {
    throw std::invalid_argument("matched_pair_test: outcome vectors differ in length");
  }
  std::size_t n01 = 0, n10 = 0;
  for (std::size_t i = 0; i < correct_a.size(); ++i) {
    if (!correct_a[i] && correct_b[i]) ++n01;
    if (correct_a[i] && !correct_b[i]) ++n10;
  }
  return matched_pair_test(n01, n10, alpha);
}

std::vector<std::size_t> mwe_subset(std::span<const TaggedSentence> tagged) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    if (!tagged[i].matches.empty()) out.push_back(i);
  }
  return out;
}

}  // namespace mwehsd
