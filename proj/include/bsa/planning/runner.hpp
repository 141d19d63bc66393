#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bsa/planning/client.hpp"
#include "bsa/planning/prompts.hpp"
#include "bsa/planning/samples.hpp"

namespace bsa::planning {

struct LogEntry {
  std::string context_id;
  int t = 0;
  std::vector<ActionClass> predictions;  // empty when the query failed
  AgentResponse response;
  ActionClass next = ActionClass::Dissection;
  std::optional<ActionClass> next2;
  int parse_retries = 0;
  int rate_limit_waits = 0;
  std::string error;  // "Errc: message" for a failed query
  nlohmann::json transcript = nlohmann::json::array();
};

struct RunMetadata {
  std::string endpoint;
  std::string model;
  std::uint64_t seed = 0;
  int parallelism = 1;
};

/// Entries ordered by (context_id, t), at most one per key.
class PredictionLog {
 public:
  RunMetadata meta;

  /// Throws Error(InvalidArgument) when (context_id, t) is already present.
  void add(LogEntry e);
  const std::vector<LogEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::vector<LogEntry> entries_;
};

/// Log entry for a sample with given top-k predictions (no transcript).
LogEntry entry_for(const PlanningSample& s, std::vector<ActionClass> predictions);

struct RunOptions {
  int parallelism = 4;
  std::uint64_t seed = 0;
};

/// Queries every sample with at most `parallelism` requests in flight.
/// Failed queries are logged with their error and no predictions.
PredictionLog run_planning(const std::vector<PlanningSample>& samples, const KnowledgeBase& kb,
                           const ClientConfig& client, const RunOptions& opts);

}  // namespace bsa::planning
