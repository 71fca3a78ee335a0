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

#include "rumour_mill/service_config.hpp"

#include <fmt/format.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rumour_mill/errors.hpp"

#ifndef RUMOUR_MILL_DEFAULT_DATA_DIR
#define RUMOUR_MILL_DEFAULT_DATA_DIR "data"
#endif

namespace rumour_mill {

namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path{p};
  return path.is_absolute() ? path : base / path;
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  return obj.at(key).get<T>();
}

}  // namespace

std::filesystem::path default_data_dir() { return RUMOUR_MILL_DEFAULT_DATA_DIR; }

ServiceConfig parse_service_config(std::string_view text, const std::filesystem::path& base_dir) {
  ServiceConfig cfg;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("service config must be a JSON object");

    if (j.contains("listen")) {
      const auto listen = j.at("listen").get<std::string>();
      const auto colon = listen.rfind(':');
      if (colon == std::string::npos) throw ConfigError("listen must be host:port");
      cfg.listen_host = listen.substr(0, colon);
      cfg.listen_port = std::stoi(listen.substr(colon + 1));
    }
    if (j.contains("backend")) {
      const auto kind = j.at("backend").get<std::string>();
      if (kind == "builtin") {
        cfg.backend = BackendKind::Builtin;
      } else if (kind == "remote") {
        cfg.backend = BackendKind::Remote;
      } else {
        throw ConfigError(fmt::format("unknown backend '{}'", kind));
      }
    }
    if (j.contains("remote")) {
      const json& r = j.at("remote");
      cfg.remote.base_url = get_or<std::string>(r, "base_url", cfg.remote.base_url);
      cfg.remote.timeout =
          std::chrono::milliseconds{get_or<std::int64_t>(r, "timeout_ms", cfg.remote.timeout.count())};
      cfg.remote.retries = get_or<int>(r, "retries", cfg.remote.retries);
      cfg.remote.health_interval = std::chrono::milliseconds{
          get_or<std::int64_t>(r, "health_interval_ms", cfg.remote.health_interval.count())};
      cfg.remote.validate();
    }
    if (j.contains("cache")) {
      const json& c = j.at("cache");
      if (c.contains("path")) cfg.cache_path = resolve(base_dir, c.at("path").get<std::string>());
      cfg.cache_capacity = get_or<std::size_t>(c, "capacity", cfg.cache_capacity);
    }
    if (j.contains("printer")) {
      const json& p = j.at("printer");
      cfg.printer_width = get_or<std::size_t>(p, "width", cfg.printer_width);
      if (p.contains("spool_dir")) {
        cfg.spool_dir = resolve(base_dir, p.at("spool_dir").get<std::string>());
      }
    }
    if (j.contains("genre_map")) cfg.genre_map = resolve(base_dir, j.at("genre_map").get<std::string>());
    if (j.contains("data_dir")) cfg.data_dir = resolve(base_dir, j.at("data_dir").get<std::string>());
    if (j.contains("refill")) {
      const json& r = j.at("refill");
      cfg.refill_interval = std::chrono::milliseconds{
          get_or<std::int64_t>(r, "interval_ms", cfg.refill_interval.count())};
      cfg.refill_target = get_or<std::size_t>(r, "target", cfg.refill_target);
      cfg.refill_per_cycle = get_or<std::size_t>(r, "per_cycle", cfg.refill_per_cycle);
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("static_dir")) {
      cfg.static_dir = resolve(base_dir, j.at("static_dir").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("service config: {}", e.what()));
  } catch (const std::logic_error& e) {
    throw ConfigError(fmt::format("service config: {}", e.what()));
  }
  if (cfg.cache_capacity == 0) throw ConfigError("cache capacity must be positive");
  if (cfg.refill_target > cfg.cache_capacity) {
    throw ConfigError("refill target exceeds cache capacity");
  }
  return cfg;
}

ServiceConfig load_service_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_service_config(buf.str(), path.parent_path());
}

}  // namespace rumour_mill
