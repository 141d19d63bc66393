#include "bsa/planning/client.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <thread>

#include <httplib.h>

#include "bsa/core/error.hpp"

namespace bsa::planning {

using nlohmann::json;

namespace {

std::string mime_for(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".webp") return "image/webp";
  if (ext == ".gif") return "image/gif";
  return "image/png";
}

json image_part(const ImageRef& img) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(img.path, ec)) {
    return {{"type", "text"}, {"text", "[" + img.label + ": " + img.path + "]"}};
  }
  std::ifstream in(img.path, std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return {{"type", "image_url"},
          {"image_url", {{"url", "data:" + mime_for(img.path) + ";base64," + httplib::detail::base64_encode(bytes)}}}};
}

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Url split_url(const std::string& u) {
  const auto scheme = u.find("://");
  if (scheme == std::string::npos) throw Error(Errc::TransportError, "endpoint must be an absolute URL: " + u);
  const auto slash = u.find('/', scheme + 3);
  if (slash == std::string::npos) return {u, "/"};
  return {u.substr(0, slash), u.substr(slash)};
}

std::string reply_content(const std::string& body) {
  const auto j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("choices")) return body;
  try {
    const auto& c = j["choices"].at(0).at("message").at("content");
    return c.is_string() ? c.get<std::string>() : c.dump();
  } catch (const json::exception&) {
    return body;
  }
}

}  // namespace

json build_request(const PromptBundle& bundle, const std::string& model) {
  json user = json::array();
  user.push_back({{"type", "text"}, {"text", bundle.user_text}});
  for (const auto& img : bundle.images) {
    user.push_back({{"type", "text"}, {"text", img.label + ":"}});
    user.push_back(image_part(img));
  }
  return {{"model", model},
          {"temperature", 0},
          {"messages", json::array({{{"role", "system"}, {"content", bundle.system_prompt}},
                                    {{"role", "user"}, {"content", std::move(user)}}})}};
}

QueryResult query_agent(const PromptBundle& bundle, const ClientConfig& cfg) {
  const auto url = split_url(cfg.endpoint);
  httplib::Client cli(url.origin);
  const auto to = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::duration<double>(cfg.timeout_s));
  cli.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(to).count() + 1);
  cli.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(to).count() + 1);

  httplib::Headers headers{{"X-Sample-Key", bundle.sample_key}};
  if (!cfg.api_token.empty()) headers.emplace("Authorization", "Bearer " + cfg.api_token);

  QueryResult result;
  json request = build_request(bundle, cfg.model);

  auto post = [&]() -> std::string {
    for (int attempt = 0;; ++attempt) {
      const auto body = request.dump();
      auto res = cli.Post(url.path, headers, body, "application/json");
      if (!res) {
        result.transcript.push_back({{"request", request}, {"error", httplib::to_string(res.error())}});
        throw Error(Errc::TransportError, cfg.endpoint + ": " + httplib::to_string(res.error()));
      }
      result.transcript.push_back({{"request", request}, {"status", res->status}, {"response", res->body}});
      if (res->status == 429) {
        if (attempt >= cfg.max_rate_limit_retries) {
          throw Error(Errc::RateLimited, "still rate limited after " + std::to_string(attempt) + " waits");
        }
        double wait = 1.0;
        if (res->has_header("Retry-After")) {
          try {
            wait = std::stod(res->get_header_value("Retry-After"));
          } catch (const std::exception&) {
          }
        }
        wait = std::clamp(wait, 0.0, cfg.max_retry_after_s);
        ++result.rate_limit_waits;
        std::this_thread::sleep_for(std::chrono::duration<double>(wait));
        continue;
      }
      if (res->status < 200 || res->status >= 300) {
        throw Error(Errc::TransportError, cfg.endpoint + " returned HTTP " + std::to_string(res->status));
      }
      return reply_content(res->body);
    }
  };

  std::string problem;
  for (int round = 0; round < 2; ++round) {
    const auto content = post();
    try {
      result.response = parse_response(content);
      return result;
    } catch (const Error& e) {
      if (e.code() != Errc::ParseError && e.code() != Errc::UnknownAction) throw;
      problem = e.what();
      if (round == 0) {
        ++result.parse_retries;
        request["messages"].push_back({{"role", "assistant"}, {"content", content}});
        request["messages"].push_back({{"role", "user"}, {"content", reinforcement_prompt(problem)}});
      }
    }
  }
  throw Error(Errc::ParseError, "reply unusable after one retry: " + problem);
}

}  // namespace bsa::planning
