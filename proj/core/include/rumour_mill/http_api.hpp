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
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "rumour_mill/mill_service.hpp"

namespace rumour_mill {

// JSON API used by the browser panel and hardware adapters:
//
//   GET  /api/state
//   POST /api/events               {"kind": "pot|switch|toggle|crank", "value": int} -> 202
//   POST /api/mill                 -> 201 {"ticket_id"}
//   GET  /api/tickets?since=<id>   long-poll, ordered [{"id", "lines", "created_at"}]
//   GET  /api/tickets/<id>/escpos  application/octet-stream
class MillHttpApi {
 public:
  struct Options {
    std::chrono::milliseconds long_poll{25000};
    std::optional<std::filesystem::path> static_dir;
  };

  MillHttpApi(MillService& service, const Clock& clock, std::function<bool()> backend_up,
              Options options);
  ~MillHttpApi();

  MillHttpApi(const MillHttpApi&) = delete;
  MillHttpApi& operator=(const MillHttpApi&) = delete;

  // Binds (port 0 picks a free port) and serves on a background thread.
  int start(const std::string& host, int port);
  // Binds and serves on the calling thread until stop().
  void run(const std::string& host, int port);
  void stop();

  int port() const noexcept { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

}  // namespace rumour_mill
