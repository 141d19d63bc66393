#include "bsa/planning/mock_server.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "bsa/core/error.hpp"
#include "bsa/core/random.hpp"

namespace bsa::planning {

using nlohmann::json;

std::string_view mock_mode_name(MockMode m) noexcept {
  switch (m) {
    case MockMode::GroundTruth: return "ground-truth";
    case MockMode::UniformRandom: return "uniform-random";
    case MockMode::MalformedThenValid: return "malformed-then-valid";
    case MockMode::NonTaxonomy: return "non-taxonomy";
    case MockMode::RateLimitOnce: return "rate-limit-once";
  }
  return "?";
}

MockMode parse_mock_mode(std::string_view name) {
  for (auto m : {MockMode::GroundTruth, MockMode::UniformRandom, MockMode::MalformedThenValid, MockMode::NonTaxonomy,
                 MockMode::RateLimitOnce}) {
    if (mock_mode_name(m) == name) return m;
  }
  throw Error(Errc::InvalidArgument, "unknown mock mode '" + std::string(name) + "'");
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string wrap(const std::string& content) {
  return json{{"id", "mock"},
              {"object", "chat.completion"},
              {"choices", json::array({{{"index", 0},
                                        {"message", {{"role", "assistant"}, {"content", content}}},
                                        {"finish_reason", "stop"}}})}}
      .dump();
}

std::string answer(const std::vector<std::string>& actions) {
  json preds = json::array();
  for (const auto& a : actions) preds.push_back({{"action", a}, {"rationale", "mock"}});
  return json{{"scene_understanding", "mock scene"},
              {"progress_judgment", "mock progress"},
              {"safety_considerations", "mock safety"},
              {"predictions", std::move(preds)}}
      .dump();
}

}  // namespace

MockServer::MockServer(MockConfig cfg) : cfg_(std::move(cfg)) {}

MockServer::~MockServer() { stop(); }

std::string MockServer::endpoint() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions"; }

std::string MockServer::reply_for(const std::string& key, int nth) const {
  auto truth = [&]() -> std::string {
    auto it = cfg_.truth.find(key);
    if (it == cfg_.truth.end()) return "NoSuchSample";
    return std::string(action_name(it->second));
  };
  switch (cfg_.mode) {
    case MockMode::GroundTruth:
    case MockMode::RateLimitOnce:
      return wrap(answer({truth()}));
    case MockMode::MalformedThenValid:
      return nth == 0 ? wrap("I think the surgeon should probably keep going.") : wrap(answer({truth()}));
    case MockMode::NonTaxonomy:
      return wrap(answer({"Stapling"}));
    case MockMode::UniformRandom: {
      Rng rng(derive_seed(cfg_.seed, fnv1a(key)));
      std::vector<ActionClass> pool(kAllActions.begin(), kAllActions.end());
      shuffle(std::span<ActionClass>(pool), rng);
      return wrap(answer({std::string(action_name(pool[0])), std::string(action_name(pool[1])),
                          std::string(action_name(pool[2]))}));
    }
  }
  return wrap("");
}

void MockServer::start() {
  if (server_) return;
  server_ = std::make_unique<httplib::Server>();
  server_->Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
    const auto key = req.get_header_value("X-Sample-Key");
    int nth;
    {
      std::lock_guard lock(mu_);
      nth = seen_[key]++;
    }
    ++served_;
    if (cfg_.mode == MockMode::RateLimitOnce && nth == 0) {
      res.status = 429;
      res.set_header("Retry-After", std::to_string(cfg_.retry_after_s));
      res.set_content(R"({"error":"rate limited"})", "application/json");
      return;
    }
    res.set_content(reply_for(key, nth), "application/json");
  });
  port_ = server_->bind_to_any_port("127.0.0.1");
  if (port_ <= 0) throw Error(Errc::TransportError, "mock server could not bind a port");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void MockServer::stop() {
  if (!server_) return;
  server_->stop();
  if (thread_.joinable()) thread_.join();
  server_.reset();
}

}  // namespace bsa::planning
