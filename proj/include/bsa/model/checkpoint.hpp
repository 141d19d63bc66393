#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "bsa/model/config.hpp"
#include "bsa/model/params.hpp"

namespace bsa::model {

inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  int version = kCheckpointVersion;
  ModelConfig config;
  ModelParams params;
  nlohmann::json metadata = nlohmann::json::object();  // training config, history, ...
};

// JSON document:
//   {"version": 1, "config": {...}, "metadata": {...},
//    "tensors": [{"name": "...", "shape": [r, c], "data": [...]}, ...]}
// Doubles are written with round-trip precision.
void write_checkpoint(std::ostream& out, const Checkpoint& ckpt);
/// Throws Error(MalformedRecord) for a missing version or unknown tensor and
/// Error(ShapeMismatch) when a tensor disagrees with the stored config.
Checkpoint read_checkpoint(std::istream& in);

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace bsa::model
