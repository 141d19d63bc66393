#include "bsa/model/checkpoint.hpp"

#include <fstream>
#include <map>

#include "bsa/core/error.hpp"

namespace bsa::model {

using nlohmann::json;

void write_checkpoint(std::ostream& out, const Checkpoint& ckpt) {
  json tensors = json::array();
  for (const auto& [name, m] : ckpt.params.named_tensors()) {
    tensors.push_back({{"name", name},
                       {"shape", {m->rows(), m->cols()}},
                       {"data", std::vector<double>(m->flat().begin(), m->flat().end())}});
  }
  json doc{{"version", ckpt.version}, {"config", to_json(ckpt.config)}, {"metadata", ckpt.metadata},
           {"tensors", std::move(tensors)}};
  out << doc.dump() << '\n';
}

Checkpoint read_checkpoint(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::MalformedRecord, std::string("checkpoint: ") + e.what());
  }
  if (!doc.contains("version")) throw Error(Errc::MalformedRecord, "checkpoint has no version field");
  Checkpoint ckpt;
  ckpt.version = doc["version"].get<int>();
  if (ckpt.version != kCheckpointVersion) {
    throw Error(Errc::MalformedRecord, "unsupported checkpoint version " + std::to_string(ckpt.version));
  }
  ckpt.config = model_config_from_json(doc.at("config"));
  ckpt.metadata = doc.value("metadata", json::object());
  ckpt.params = ModelParams::zeros(ckpt.config);

  std::map<std::string, Matrix*> by_name;
  for (auto& [name, m] : ckpt.params.named_tensors()) by_name[name] = m;
  std::size_t loaded = 0;
  for (const auto& t : doc.at("tensors")) {
    const auto name = t.at("name").get<std::string>();
    auto it = by_name.find(name);
    if (it == by_name.end()) throw Error(Errc::MalformedRecord, "unknown tensor " + name);
    const auto shape = t.at("shape").get<std::vector<std::size_t>>();
    const auto data = t.at("data").get<std::vector<double>>();
    Matrix& m = *it->second;
    if (shape.size() != 2 || shape[0] != m.rows() || shape[1] != m.cols() || data.size() != m.size()) {
      throw Error(Errc::ShapeMismatch, "tensor " + name + " does not match the config");
    }
    std::copy(data.begin(), data.end(), m.flat().begin());
    ++loaded;
  }
  if (loaded != by_name.size()) throw Error(Errc::MalformedRecord, "checkpoint is missing tensors");
  return ckpt;
}

void save_checkpoint(const std::string& path, const Checkpoint& ckpt) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  write_checkpoint(out, ckpt);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  return read_checkpoint(in);
}

}  // namespace bsa::model
