#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "mwehsd/model.hpp"

namespace mwehsd {

struct CheckpointMetadata {
  std::uint64_t seed = 0;
  std::size_t epochs_run = 0;
  double dev_macro_f1 = 0.0;
  std::string group;           // category group selector name
  std::string embedding_mode;  // static | contextual | sentence-only
};

struct Checkpoint {
  Model model;
  CheckpointMetadata metadata;
};

/// JSON: {"float_width", "config", "tensors": {name: {shape, data}}, "metadata"}.
/// Doubles are written in shortest round-trip form, so a reload is bit-exact.
void save_checkpoint(std::ostream& out, const Model& model, const CheckpointMetadata& meta);
void save_checkpoint_file(const std::filesystem::path& path, const Model& model,
                          const CheckpointMetadata& meta);
Checkpoint load_checkpoint(std::istream& in);
Checkpoint load_checkpoint_file(const std::filesystem::path& path);

}  // namespace mwehsd
