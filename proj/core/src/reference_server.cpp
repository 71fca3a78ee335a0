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

#include "rumour_mill/reference_server.hpp"

#include <fmt/format.h>
#include <httplib.h>

#include <json.hpp>
#include <thread>

#include "rumour_mill/errors.hpp"

namespace rumour_mill {

namespace {

using nlohmann::json;

struct BadRequest {
  std::string message;
};

void reply_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

const json& field(const json& body, const char* name, json::value_t type) {
  if (!body.contains(name)) throw BadRequest{fmt::format("missing field '{}'", name)};
  const json& v = body[name];
  const bool ok = type == json::value_t::number_float ? v.is_number()
                  : type == json::value_t::number_unsigned ? v.is_number_unsigned()
                                                           : v.type() == type;
  if (!ok) throw BadRequest{fmt::format("field '{}' has the wrong type", name)};
  return v;
}

double temperature_field(const json& body) {
  const double t = field(body, "temperature", json::value_t::number_float).get<double>();
  if (!(t > 0.0)) throw BadRequest{"temperature must be positive"};
  return t;
}

template <typename Fn>
void guarded(httplib::Response& res, const httplib::Request& req, Fn&& fn) {
  try {
    const json body = json::parse(req.body);
    reply_json(res, 200, {{"text", fn(body)}});
  } catch (const json::exception& e) {
    reply_json(res, 400, {{"error", fmt::format("malformed JSON: {}", e.what())}});
  } catch (const BadRequest& e) {
    reply_json(res, 400, {{"error", e.message}});
  } catch (const ConfigMissing& e) {
    reply_json(res, 404, {{"error", e.what()}});
  } catch (const std::exception& e) {
    reply_json(res, 500, {{"error", e.what()}});
  }
}

}  // namespace

struct ReferenceServer::Impl {
  Impl(const BuiltinBackend& b, GenreMap g, int m) : backend(b), genres(std::move(g)), max_tokens(m) {}

  const BuiltinBackend& backend;
  GenreMap genres;
  int max_tokens;
  httplib::Server server;
  std::thread thread;
};

ReferenceServer::ReferenceServer(const BuiltinBackend& backend, GenreMap genres, int max_tokens)
    : impl_(std::make_unique<Impl>(backend, std::move(genres), max_tokens)) {
  auto& s = impl_->server;
  Impl* impl = impl_.get();

  s.Post("/v1/headline", [impl](const httplib::Request& req, httplib::Response& res) {
    guarded(res, req, [impl](const json& body) {
      const double temperature = temperature_field(body);
      const auto genre =
          genre_from_name(field(body, "genre", json::value_t::string).get<std::string>());
      if (!genre || *genre == Genre::Random) throw BadRequest{"unknown or unresolved genre"};
      const auto seed = field(body, "seed", json::value_t::number_unsigned).get<std::uint64_t>();
      return impl->backend.headline_with_seed(temperature, *genre, seed);
    });
  });

  s.Post("/v1/story", [impl](const httplib::Request& req, httplib::Response& res) {
    guarded(res, req, [impl](const json& body) {
      const auto headline = field(body, "headline", json::value_t::string).get<std::string>();
      if (headline.empty()) throw BadRequest{"headline is empty"};
      ControlSpec spec;
      spec.temperature = temperature_field(body);
      spec.genre_code = field(body, "genre_code", json::value_t::string).get<std::string>();
      spec.links_code = field(body, "links_code", json::value_t::string).get<std::string>();
      const auto genre = impl->genres.genre_for_code(spec.genre_code);
      if (!genre) throw BadRequest{fmt::format("unknown genre code '{}'", spec.genre_code)};
      const auto links = parse_links_code(spec.links_code);
      if (!links) throw BadRequest{fmt::format("malformed links code '{}'", spec.links_code)};
      spec.effective_genre = *genre;
      spec.target_date = links->date;
      const auto seed = field(body, "seed", json::value_t::number_unsigned).get<std::uint64_t>();
      return impl->backend.story_with_seed(headline, spec, seed, impl->max_tokens);
    });
  });

  s.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
    reply_json(res, 200, {{"status", "ok"}});
  });
}

ReferenceServer::~ReferenceServer() { stop(); }

int ReferenceServer::start(const std::string& host, int port) {
  auto& s = impl_->server;
  port_ = port == 0 ? s.bind_to_any_port(host) : (s.bind_to_port(host, port) ? port : -1);
  if (port_ < 0) throw Error(fmt::format("reference server cannot bind {}:{}", host, port));
  impl_->thread = std::thread([&s] { s.listen_after_bind(); });
  s.wait_until_ready();
  return port_;
}

void ReferenceServer::run(const std::string& host, int port) {
  port_ = port;
  if (!impl_->server.listen(host, port)) {
    throw Error(fmt::format("reference server cannot listen on {}:{}", host, port));
  }
}

void ReferenceServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::string ReferenceServer::base_url() const { return fmt::format("http://127.0.0.1:{}", port_); }

}  // namespace rumour_mill
