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

#include "rumour_mill/http_api.hpp"

#include <fmt/format.h>
#include <httplib.h>
#include <spdlog/spdlog.h>

#include <json.hpp>
#include <thread>

#include "rumour_mill/errors.hpp"

namespace rumour_mill {

namespace {

using nlohmann::json;

void reply_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, std::string_view message) {
  reply_json(res, status, {{"error", message}});
}

json ticket_json(const Ticket& t) {
  return {{"id", t.id}, {"lines", t.lines}, {"created_at", format_timestamp(t.created_at)}};
}

}  // namespace

struct MillHttpApi::Impl {
  Impl(MillService& s, const Clock& c, std::function<bool()> up, Options o)
      : service(s), clock(c), backend_up(std::move(up)), options(std::move(o)) {}

  MillService& service;
  const Clock& clock;
  std::function<bool()> backend_up;
  Options options;
  httplib::Server server;
  std::thread thread;
};

MillHttpApi::MillHttpApi(MillService& service, const Clock& clock,
                         std::function<bool()> backend_up, Options options)
    : impl_(std::make_unique<Impl>(service, clock, std::move(backend_up), std::move(options))) {
  Impl* impl = impl_.get();
  auto& s = impl->server;

  s.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  s.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  s.Get("/api/state", [impl](const httplib::Request&, httplib::Response& res) {
    const PanelState panel = impl->service.panel();
    json counts = json::object();
    const auto stocked = impl->service.cache().counts();
    for (const auto& key : all_cache_keys()) {
      const auto it = stocked.find(key);
      counts[key.to_string()] = it == stocked.end() ? 0 : it->second;
    }
    reply_json(res, 200,
               {{"pot", panel.pot_raw},
                {"switch", panel.switch_pos},
                {"toggle", when_name(panel.toggle_pos)},
                {"crank_deg", effective_crank_deg(panel, impl->clock.now())},
                {"backend", impl->backend_up() ? "up" : "down"},
                {"cache_counts", std::move(counts)}});
  });

  s.Post("/api/events", [impl](const httplib::Request& req, httplib::Response& res) {
    const json body = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
    if (!body.is_object() || !body.contains("kind") || !body["kind"].is_string() ||
        !body.contains("value") || !body["value"].is_number_integer()) {
      return reply_error(res, 400, R"(expected {"kind": string, "value": integer})");
    }
    const auto kind = event_kind_from_name(body["kind"].get<std::string>());
    if (!kind) return reply_error(res, 400, "kind must be pot, switch, toggle or crank");
    const auto value = body["value"].get<std::int64_t>();
    if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
      return reply_error(res, 400, "value out of range");
    }
    try {
      const bool triggered = impl->service.submit_event(*kind, static_cast<int>(value));
      reply_json(res, 202, {{"triggered", triggered}});
    } catch (const InvalidEvent& e) {
      reply_error(res, 400, e.what());
    } catch (const Error& e) {
      reply_error(res, 503, e.what());
    }
  });

  s.Post("/api/mill", [impl](const httplib::Request&, httplib::Response& res) {
    try {
      const Ticket ticket = impl->service.mill().get();
      reply_json(res, 201, {{"ticket_id", ticket.id}});
    } catch (const std::exception& e) {
      reply_error(res, 503, e.what());
    }
  });

  s.Get("/api/tickets", [impl](const httplib::Request& req, httplib::Response& res) {
    std::optional<std::string> since;
    if (req.has_param("since")) since = req.get_param_value("since");
    json out = json::array();
    for (const auto& t : impl->service.tickets_since(since, impl->options.long_poll)) {
      out.push_back(ticket_json(t));
    }
    reply_json(res, 200, out);
  });

  s.Get(R"(/api/tickets/([^/]+)/escpos)", [impl](const httplib::Request& req,
                                                 httplib::Response& res) {
    const auto ticket = impl->service.ticket(req.matches[1].str());
    if (!ticket) return reply_error(res, 404, "unknown ticket");
    res.status = 200;
    res.set_content(std::string(ticket->escpos.begin(), ticket->escpos.end()),
                    "application/octet-stream");
  });

  if (impl->options.static_dir) {
    if (!s.set_mount_point("/", impl->options.static_dir->string())) {
      spdlog::warn("static directory '{}' not found; UI not served",
                   impl->options.static_dir->string());
    }
  }
}

MillHttpApi::~MillHttpApi() { stop(); }

int MillHttpApi::start(const std::string& host, int port) {
  auto& s = impl_->server;
  port_ = port == 0 ? s.bind_to_any_port(host) : (s.bind_to_port(host, port) ? port : -1);
  if (port_ < 0) throw Error(fmt::format("mill API cannot bind {}:{}", host, port));
  impl_->thread = std::thread([&s] { s.listen_after_bind(); });
  s.wait_until_ready();
  return port_;
}

void MillHttpApi::run(const std::string& host, int port) {
  port_ = port;
  if (!impl_->server.listen(host, port)) {
    throw Error(fmt::format("mill API cannot listen on {}:{}", host, port));
  }
}

void MillHttpApi::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace rumour_mill
