#include "bsa/planning/log_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "bsa/core/error.hpp"

namespace bsa::planning {

using nlohmann::json;

namespace {

ActionClass action_or_throw(const json& j) {
  const auto name = j.get<std::string>();
  const auto a = parse_action(name);
  if (!a) throw Error(Errc::MalformedRecord, "log names unknown action " + name);
  return *a;
}

}  // namespace

void write_log(std::ostream& out, const PredictionLog& log) {
  out << json{{"run",
               {{"endpoint", log.meta.endpoint},
                {"model", log.meta.model},
                {"seed", log.meta.seed},
                {"parallelism", log.meta.parallelism}}}}
             .dump()
      << '\n';
  for (const auto& e : log.entries()) {
    json preds = json::array();
    for (auto a : e.predictions) preds.push_back(std::string(action_name(a)));
    json j{{"context_id", e.context_id},
           {"t", e.t},
           {"predictions", std::move(preds)},
           {"next", std::string(action_name(e.next))},
           {"next2", e.next2 ? json(std::string(action_name(*e.next2))) : json(nullptr)},
           {"response", e.response.predictions.empty() ? json(nullptr) : response_to_json(e.response)},
           {"parse_retries", e.parse_retries},
           {"rate_limit_waits", e.rate_limit_waits},
           {"error", e.error},
           {"transcript", e.transcript}};
    out << j.dump() << '\n';
  }
}

PredictionLog read_log(std::istream& in) {
  PredictionLog log;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = json::parse(line);
      if (j.contains("run")) {
        const auto& r = j["run"];
        log.meta = {r.value("endpoint", ""), r.value("model", ""), r.value("seed", std::uint64_t{0}),
                    r.value("parallelism", 1)};
        continue;
      }
      LogEntry e;
      e.context_id = j.at("context_id").get<std::string>();
      e.t = j.at("t").get<int>();
      for (const auto& p : j.at("predictions")) e.predictions.push_back(action_or_throw(p));
      e.next = action_or_throw(j.at("next"));
      if (j.contains("next2") && !j["next2"].is_null()) e.next2 = action_or_throw(j["next2"]);
      if (j.contains("response") && !j["response"].is_null()) e.response = response_from_json(j["response"]);
      e.parse_retries = j.value("parse_retries", 0);
      e.rate_limit_waits = j.value("rate_limit_waits", 0);
      e.error = j.value("error", "");
      e.transcript = j.value("transcript", json::array());
      log.add(std::move(e));
    } catch (const json::exception& ex) {
      throw Error(Errc::MalformedRecord, "log line " + std::to_string(lineno) + ": " + ex.what());
    }
  }
  return log;
}

void save_log(const std::string& path, const PredictionLog& log) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  write_log(out, log);
}

PredictionLog load_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  return read_log(in);
}

}  // namespace bsa::planning
