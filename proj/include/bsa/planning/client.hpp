#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "bsa/planning/prompts.hpp"
#include "bsa/planning/response.hpp"

namespace bsa::planning {

struct ClientConfig {
  std::string endpoint = "http://127.0.0.1:8080/v1/chat/completions";
  std::string model = "gpt-4o";
  std::string api_token;  // sent as a bearer token when non-empty
  double timeout_s = 120.0;
  int max_rate_limit_retries = 3;
  double max_retry_after_s = 60.0;  // cap on a server-requested wait
};

/// Chat-completion request body: system prompt, then a user turn of text
/// parts and images. Existing image files are embedded as base64 data URIs;
/// missing ones become text references. temperature is 0.
nlohmann::json build_request(const PromptBundle& bundle, const std::string& model);

struct QueryResult {
  AgentResponse response;
  nlohmann::json transcript = nlohmann::json::array();  // verbatim request/response exchanges
  int parse_retries = 0;
  int rate_limit_waits = 0;
};

/// Sends the bundle and parses the reply. An unusable reply is retried once
/// with a reinforcing instruction. HTTP 429 waits for Retry-After and tries
/// again up to max_rate_limit_retries times.
/// Throws Error(TransportError), Error(ParseError) after the retry (naming the
/// offending token when the action was unknown), Error(RateLimited).
QueryResult query_agent(const PromptBundle& bundle, const ClientConfig& cfg);

}  // namespace bsa::planning
