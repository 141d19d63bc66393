#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "bsa/core/action.hpp"

namespace httplib {
class Server;
}

namespace bsa::planning {

enum class MockMode {
  GroundTruth,        // answers the sample's true next action
  UniformRandom,      // three distinct actions drawn uniformly, seeded per sample key
  MalformedThenValid, // first reply per key is not JSON, later ones are ground truth
  NonTaxonomy,        // always names an action outside the taxonomy
  RateLimitOnce,      // first request per key gets 429 + Retry-After, then ground truth
};

std::string_view mock_mode_name(MockMode m) noexcept;
/// Throws Error(InvalidArgument) for an unknown name.
MockMode parse_mock_mode(std::string_view name);

struct MockConfig {
  MockMode mode = MockMode::GroundTruth;
  std::uint64_t seed = 0;
  std::map<std::string, ActionClass> truth;  // sample key -> next action
  int retry_after_s = 0;
};

/// In-process chat-completion endpoint on 127.0.0.1. The sample is
/// identified by the X-Sample-Key request header.
class MockServer {
 public:
  explicit MockServer(MockConfig cfg);
  ~MockServer();
  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  /// Binds an ephemeral port and serves on a background thread.
  void start();
  void stop();

  int port() const noexcept { return port_; }
  std::string endpoint() const;
  std::size_t requests_served() const noexcept { return served_.load(); }

  /// Reply body the mock gives for `key` on its n-th request (0-based).
  std::string reply_for(const std::string& key, int nth) const;

 private:
  MockConfig cfg_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<std::size_t> served_{0};
  mutable std::mutex mu_;
  std::map<std::string, int> seen_;
};

}  // namespace bsa::planning
