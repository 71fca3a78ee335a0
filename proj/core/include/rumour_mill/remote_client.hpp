/* Copyright 2026 The Rumour Mill Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>

#include "rumour_mill/backend.hpp"
#include "rumour_mill/params.hpp"

namespace rumour_mill {

// Client side of the remote generation protocol:
//
//   POST /v1/headline {"temperature", "genre", "seed"}                   -> {"text"}
//   POST /v1/story    {"headline", "temperature", "genre_code",
//                      "links_code", "seed"}                             -> {"text"}
//   GET  /v1/health                                                      -> {"status": "ok"}
struct RemoteBackendConfig {
  std::string base_url = "http://127.0.0.1:8090";
  std::chrono::milliseconds timeout{8000};
  int retries = 1;
  std::chrono::milliseconds health_interval{5000};

  // Throws ConfigError when timeout <= 0 or retries < 0.
  void validate() const;
};

inline constexpr std::chrono::milliseconds kHealthTimeout{1000};

enum class HealthStatus { Up, Down };

// Timeouts, refused connections and 5xx are retried `config.retries` times.
// Exhausted retries and 4xx raise BackendUnavailable; a 200 whose body is
// not {"text": <non-empty string>} raises ProtocolError.
std::string remote_generate_headline(const RemoteBackendConfig& config, double temperature,
                                     Genre effective_genre, std::uint64_t seed);

std::string remote_generate_story(const RemoteBackendConfig& config, std::string_view headline,
                                  const ControlSpec& spec, std::uint64_t seed);

HealthStatus health(const RemoteBackendConfig& config);

class RemoteBackend final : public GenerationBackend {
 public:
  explicit RemoteBackend(RemoteBackendConfig config);

  // The seed sent on the wire is rng.derive_seed().
  std::string generate_headline(double temperature, Genre effective_genre, Rng& rng) override;
  // max_tokens is not part of the wire protocol; the server decides.
  std::string generate_story(std::string_view seed_text, const ControlSpec& spec, Rng& rng,
                             int max_tokens) override;

  const RemoteBackendConfig& config() const noexcept { return config_; }

 private:
  RemoteBackendConfig config_;
};

// Periodic health poller publishing an atomic Up/Down snapshot.
class HealthMonitor {
 public:
  explicit HealthMonitor(RemoteBackendConfig config);
  ~HealthMonitor();

  HealthMonitor(const HealthMonitor&) = delete;
  HealthMonitor& operator=(const HealthMonitor&) = delete;

  void start();
  void stop();
  HealthStatus poll_once();
  bool up() const noexcept { return up_.load(); }

 private:
  RemoteBackendConfig config_;
  std::atomic<bool> up_{false};
  std::mutex mu_;
  std::condition_variable cv_;
  bool stopping_ = false;
  std::thread thread_;
};

}  // namespace rumour_mill
