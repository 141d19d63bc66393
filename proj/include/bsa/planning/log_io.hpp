#pragma once

#include <iosfwd>
#include <string>

#include "bsa/planning/runner.hpp"

namespace bsa::planning {

// Line-delimited JSON. First line {"run": {endpoint, model, seed, parallelism}},
// then one object per entry: context_id, t, predictions, next, next2 (null at
// a tail), response, parse_retries, rate_limit_waits, error, transcript.
void write_log(std::ostream& out, const PredictionLog& log);
PredictionLog read_log(std::istream& in);
void save_log(const std::string& path, const PredictionLog& log);
PredictionLog load_log(const std::string& path);

}  // namespace bsa::planning
