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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "rumour_mill/remote_client.hpp"

namespace rumour_mill {

enum class BackendKind { Builtin, Remote };

// `mill serve` configuration, JSON on disk:
//
// {
//   "listen": "127.0.0.1:8080",
//   "backend": "builtin" | "remote",
//   "remote": {"base_url": "...", "timeout_ms": 8000, "retries": 1, "health_interval_ms": 5000},
//   "cache": {"path": "mill-cache.journal", "capacity": 8},
//   "printer": {"width": 32, "spool_dir": "spool"},
//   "genre_map": "genres.conf",
//   "data_dir": "data",
//   "refill": {"interval_ms": 60000, "target": 2, "per_cycle": 5},
//   "seed": 42,
//   "static_dir": "ui/dist"
// }
//
// Every key is optional. Relative paths resolve against the config file's
// directory.
struct ServiceConfig {
  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;
  BackendKind backend = BackendKind::Builtin;
  RemoteBackendConfig remote;
  std::optional<std::filesystem::path> cache_path;
  std::size_t cache_capacity = 8;
  std::size_t printer_width = 32;
  std::optional<std::filesystem::path> spool_dir;
  std::optional<std::filesystem::path> genre_map;
  std::optional<std::filesystem::path> data_dir;
  std::chrono::milliseconds refill_interval{60000};
  std::size_t refill_target = 2;
  std::size_t refill_per_cycle = 5;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> static_dir;
};

// Throws ConfigError.
ServiceConfig parse_service_config(std::string_view json, const std::filesystem::path& base_dir);
ServiceConfig load_service_config(const std::filesystem::path& path);

// Compiled-in location of the bundled corpora and phrase lists.
std::filesystem::path default_data_dir();

}  // namespace rumour_mill
