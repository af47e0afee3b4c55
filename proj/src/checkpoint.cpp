#include "mwehsd/checkpoint.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "mwehsd/error.hpp"

namespace mwehsd {

namespace {

constexpr const char* kFormat = "mwehsd-checkpoint";

nlohmann::json config_json(const ModelConfig& c) {
  return {{"onehot_cols", c.onehot_cols},   {"max_tokens", c.max_tokens},
          {"mwe_embed_dim", c.mwe_embed_dim}, {"max_mwe_tokens", c.max_mwe_tokens},
          {"sentence_dim", c.sentence_dim}, {"conv_filters", c.conv_filters},
          {"kernel", c.kernel},             {"pool", c.pool},
          {"lstm_units", c.lstm_units},     {"dense_units", c.dense_units},
          {"n_classes", c.n_classes},       {"mwe_branches", c.mwe_branches},
          {"seed", c.seed}};
}

ModelConfig config_from_json(const nlohmann::json& j) {
  ModelConfig c;
  c.onehot_cols = j.at("onehot_cols").get<std::size_t>();
  c.max_tokens = j.at("max_tokens").get<std::size_t>();
  c.mwe_embed_dim = j.at("mwe_embed_dim").get<std::size_t>();
  c.max_mwe_tokens = j.at("max_mwe_tokens").get<std::size_t>();
  c.sentence_dim = j.at("sentence_dim").get<std::size_t>();
  c.conv_filters = j.at("conv_filters").get<std::vector<std::size_t>>();
  c.kernel = j.at("kernel").get<std::size_t>();
  c.pool = j.at("pool").get<std::size_t>();
  c.lstm_units = j.at("lstm_units").get<std::size_t>();
  c.dense_units = j.at("dense_units").get<std::size_t>();
  c.n_classes = j.at("n_classes").get<std::size_t>();
  c.mwe_branches = j.at("mwe_branches").get<bool>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

}  // namespace

void save_checkpoint(std::ostream& out, const Model& model, const CheckpointMetadata& meta) {
  nlohmann::json tensors = nlohmann::json::object();
  model.for_each_parameter([&](const std::string& name, const Tensor& t) {
    tensors[name] = {{"shape", t.shape()}, {"data", t.storage()}};
  });
  const nlohmann::json doc = {
      {"format", kFormat},
      {"float_width", 64},
      {"config", config_json(model.config())},
      {"tensors", std::move(tensors)},
      {"metadata",
       {{"seed", meta.seed},
        {"epochs_run", meta.epochs_run},
        {"dev_macro_f1", meta.dev_macro_f1},
        {"group", meta.group},
        {"embedding_mode", meta.embedding_mode}}},
  };
  out << doc.dump() << '\n';
}

void save_checkpoint_file(const std::filesystem::path& path, const Model& model, const CheckpointMetadata& meta) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write checkpoint '" + path.string() + "'");
  save_checkpoint(out, model, meta);
}

Checkpoint load_checkpoint(std::istream& in) {
  try {
    const auto doc = nlohmann::json::parse(in);
    if (doc.value("format", "") != kFormat) throw DataError("not a checkpoint file");
    if (doc.at("float_width").get<int>() != 64) throw DataError("unsupported float width");
    Model model(config_from_json(doc.at("config")));
    const auto& tensors = doc.at("tensors");
    std::size_t seen = 0;
    model.for_each_parameter([&](const std::string& name, Tensor& t) {
      if (!tensors.contains(name)) throw DataError("checkpoint lacks tensor '" + name + "'");
      const auto& jt = tensors[name];
      auto shape = jt.at("shape").get<std::vector<std::size_t>>();
      if (shape != t.shape()) {
        throw DataError("tensor '" + name + "' has shape " + shape_string(shape) + ", config implies " +
                        shape_string(t.shape()));
      }
      t = Tensor(std::move(shape), jt.at("data").get<std::vector<double>>());
      ++seen;
    });
    if (seen != tensors.size()) throw DataError("checkpoint has tensors the config does not define");

    const auto& jm = doc.at("metadata");
    CheckpointMetadata meta;
    meta.seed = jm.at("seed").get<std::uint64_t>();
    meta.epochs_run = jm.at("epochs_run").get<std::size_t>();
    meta.dev_macro_f1 = jm.at("dev_macro_f1").get<double>();
    meta.group = jm.at("group").get<std::string>();
    meta.embedding_mode = jm.at("embedding_mode").get<std::string>();
    return {std::move(model), std::move(meta)};
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed checkpoint: ") + e.what());
  } catch (const ShapeError& e) {
    throw DataError(std::string("malformed checkpoint: ") + e.what());
  }
}

Checkpoint load_checkpoint_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open checkpoint '" + path.string() + "'");
  return load_checkpoint(in);
}

}  // namespace mwehsd
