#pragma once

#include <cstddef>
#include <string>

#include "mwehsd/tensor.hpp"

namespace mwehsd {

/// The three branch inputs of one tweet plus its label.
struct ExampleFeatures {
  std::string id;
  Tensor onehot;        // [max_tokens, K + 1]
  Tensor mwe_embeds;    // [max_mwe_tokens, E]
  std::size_t mwe_len = 0;
  Tensor sentence_vec;  // [S]
  int label = 0;
  bool empty_text = false;  // nothing left after cleaning
  std::size_t match_count = 0;

  friend bool operator==(const ExampleFeatures&, const ExampleFeatures&) = default;
};

}  // namespace mwehsd
