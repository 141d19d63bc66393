#include "bsa/planning/runner.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "bsa/core/error.hpp"

namespace bsa::planning {

void PredictionLog::add(LogEntry e) {
  auto less = [](const LogEntry& a, const LogEntry& b) {
    return a.context_id != b.context_id ? a.context_id < b.context_id : a.t < b.t;
  };
  auto it = std::lower_bound(entries_.begin(), entries_.end(), e, less);
  if (it != entries_.end() && it->context_id == e.context_id && it->t == e.t) {
    throw Error(Errc::InvalidArgument, "duplicate log entry " + e.context_id + "/" + std::to_string(e.t));
  }
  entries_.insert(it, std::move(e));
}

LogEntry entry_for(const PlanningSample& s, std::vector<ActionClass> predictions) {
  LogEntry e;
  e.context_id = s.context_id;
  e.t = s.t;
  e.predictions = std::move(predictions);
  e.next = s.next;
  e.next2 = s.next2;
  return e;
}

PredictionLog run_planning(const std::vector<PlanningSample>& samples, const KnowledgeBase& kb,
                           const ClientConfig& client, const RunOptions& opts) {
  // Prompts first so a missing procedure fails before any request is sent.
  std::vector<PromptBundle> bundles;
  bundles.reserve(samples.size());
  for (const auto& s : samples) bundles.push_back(assemble_prompts(s, kb));

  std::vector<LogEntry> slots(samples.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < samples.size();) {
      LogEntry e = entry_for(samples[i], {});
      try {
        auto r = query_agent(bundles[i], client);
        e.predictions = r.response.actions();
        e.response = std::move(r.response);
        e.parse_retries = r.parse_retries;
        e.rate_limit_waits = r.rate_limit_waits;
        e.transcript = std::move(r.transcript);
      } catch (const Error& err) {
        e.error = err.what();
      }
      slots[i] = std::move(e);
    }
  };
  const int n = std::max(1, std::min<int>(opts.parallelism, static_cast<int>(samples.size())));
  std::vector<std::thread> pool;
  for (int w = 0; w < n; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  PredictionLog log;
  log.meta = {client.endpoint, client.model, opts.seed, opts.parallelism};
  for (auto& e : slots) log.add(std::move(e));
  return log;
}

}  // namespace bsa::planning
