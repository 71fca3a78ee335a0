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

#include "rumour_mill/remote_client.hpp"

#include <fmt/format.h>
#include <httplib.h>
#include <spdlog/spdlog.h>

#include <json.hpp>

#include "rumour_mill/errors.hpp"

namespace rumour_mill {

namespace {

using nlohmann::json;
using Reason = BackendUnavailable::Reason;

Reason classify(httplib::Error error) {
  switch (error) {
    case httplib::Error::Connection:
      return Reason::ConnectionRefused;
    case httplib::Error::ConnectionTimeout:
    case httplib::Error::Read:
      return Reason::Timeout;
    default:
      return Reason::Transport;
  }
}

httplib::Client make_client(const std::string& base_url, std::chrono::milliseconds timeout) {
  httplib::Client client(base_url);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  return client;
}

std::string post_for_text(const RemoteBackendConfig& config, const std::string& path,
                          const json& request) {
  config.validate();
  const std::string body = request.dump();
  std::optional<BackendUnavailable> last;
  for (int attempt = 0; attempt <= config.retries; ++attempt) {
    auto client = make_client(config.base_url, config.timeout);
    const auto res = client.Post(path, body, "application/json");
    if (!res) {
      last.emplace(classify(res.error()),
                   fmt::format("{}{}: {}", config.base_url, path, httplib::to_string(res.error())));
      continue;
    }
    if (res->status >= 500) {
      last.emplace(Reason::ServerError,
                   fmt::format("{}{}: HTTP {}", config.base_url, path, res->status));
      continue;
    }
    if (res->status != 200) {
      throw BackendUnavailable(Reason::ClientError,
                               fmt::format("{}{}: HTTP {}", config.base_url, path, res->status));
    }
    const json reply = json::parse(res->body, nullptr, /*allow_exceptions=*/false);
    if (!reply.is_object() || !reply.contains("text") || !reply["text"].is_string() ||
        reply["text"].get_ref<const std::string&>().empty()) {
      throw ProtocolError(fmt::format("{}{}: response is not {{\"text\": <string>}}",
                                      config.base_url, path));
    }
    return reply["text"].get<std::string>();
  }
  throw *last;
}

}  // namespace

void RemoteBackendConfig::validate() const {
  if (timeout.count() <= 0) throw ConfigError("remote timeout must be positive");
  if (retries < 0) throw ConfigError("remote retry count must be non-negative");
  if (base_url.empty()) throw ConfigError("remote base URL is empty");
}

std::string remote_generate_headline(const RemoteBackendConfig& config, double temperature,
                                     Genre effective_genre, std::uint64_t seed) {
  return post_for_text(config, "/v1/headline",
                       {{"temperature", temperature},
                        {"genre", genre_slug(effective_genre)},
                        {"seed", seed}});
}

std::string remote_generate_story(const RemoteBackendConfig& config, std::string_view headline,
                                  const ControlSpec& spec, std::uint64_t seed) {
  return post_for_text(config, "/v1/story",
                       {{"headline", headline},
                        {"temperature", spec.temperature},
                        {"genre_code", spec.genre_code},
                        {"links_code", spec.links_code},
                        {"seed", seed}});
}

HealthStatus health(const RemoteBackendConfig& config) {
  auto client = make_client(config.base_url, kHealthTimeout);
  const auto res = client.Get("/v1/health");
  return res && res->status == 200 ? HealthStatus::Up : HealthStatus::Down;
}

RemoteBackend::RemoteBackend(RemoteBackendConfig config) : config_(std::move(config)) {
  config_.validate();
}

std::string RemoteBackend::generate_headline(double temperature, Genre effective_genre, Rng& rng) {
  return remote_generate_headline(config_, temperature, effective_genre, rng.derive_seed());
}

std::string RemoteBackend::generate_story(std::string_view seed_text, const ControlSpec& spec,
                                          Rng& rng, int /*max_tokens*/) {
  return remote_generate_story(config_, seed_text, spec, rng.derive_seed());
}

HealthMonitor::HealthMonitor(RemoteBackendConfig config) : config_(std::move(config)) {}

HealthMonitor::~HealthMonitor() { stop(); }

HealthStatus HealthMonitor::poll_once() {
  const HealthStatus status = health(config_);
  const bool up = status == HealthStatus::Up;
  if (up_.exchange(up) != up) {
    spdlog::info("remote backend {} is {}", config_.base_url, up ? "up" : "down");
  }
  return status;
}

void HealthMonitor::start() {
  if (thread_.joinable()) return;
  {
    std::lock_guard lock(mu_);
    stopping_ = false;
  }
  thread_ = std::thread([this] {
    std::unique_lock lock(mu_);
    while (!stopping_) {
      lock.unlock();
      poll_once();
      lock.lock();
      cv_.wait_for(lock, config_.health_interval, [this] { return stopping_; });
    }
  });
}

void HealthMonitor::stop() {
  {
    std::lock_guard lock(mu_);
    stopping_ = true;
  }
  cv_.notify_all();
  if (thread_.joinable()) thread_.join();
}

}  // namespace rumour_mill
