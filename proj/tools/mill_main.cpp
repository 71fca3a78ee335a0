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

#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <csignal>
#include <iostream>
#include <memory>
#include <optional>
#include <random>

#include "rumour_mill/builtin_backend.hpp"
#include "rumour_mill/cache.hpp"
#include "rumour_mill/clock.hpp"
#include "rumour_mill/errors.hpp"
#include "rumour_mill/http_api.hpp"
#include "rumour_mill/mill_service.hpp"
#include "rumour_mill/params.hpp"
#include "rumour_mill/reference_server.hpp"
#include "rumour_mill/remote_client.hpp"
#include "rumour_mill/service_config.hpp"
#include "rumour_mill/textgen.hpp"
#include "rumour_mill/ticket.hpp"

namespace rm = rumour_mill;

namespace {

constexpr int kExitNoRumour = 2;

struct Common {
  std::string data_dir;
  std::string genres_path;
};

rm::GenreMap load_genres(const std::string& path) {
  return path.empty() ? rm::GenreMap::defaults() : rm::GenreMap::load(path);
}

std::filesystem::path data_dir_or_default(const std::string& dir) {
  return dir.empty() ? rm::default_data_dir() : std::filesystem::path{dir};
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// Blocks until SIGINT or SIGTERM. The signals must already be blocked in
// every thread so sigwait sees them.
int wait_for_signal(const sigset_t& set) {
  int sig = 0;
  sigwait(&set, &sig);
  return sig;
}

sigset_t block_stop_signals() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);
  return set;
}

struct OnceArgs {
  double wackiness = 0.5;
  std::string genre = "politics";
  std::string when = "present";
  std::optional<std::uint64_t> seed;
  std::string backend = "builtin";
  std::string remote_url;
  std::string now;
  std::string cache_path;
  std::size_t width = rm::kDefaultTicketWidth;
};

int run_once(const OnceArgs& a, const Common& common) {
  const auto genre = rm::genre_from_name(a.genre);
  if (!genre) throw rm::ConfigError(fmt::format("unknown genre '{}'", a.genre));
  const auto when = rm::when_from_name(a.when);
  if (!when) throw rm::ConfigError(fmt::format("unknown when setting '{}'", a.when));
  const rm::MillSettings settings{rm::Wackiness{a.wackiness}, *genre, *when};

  std::unique_ptr<rm::Clock> clock;
  if (a.now.empty()) {
    clock = std::make_unique<rm::SystemClock>();
  } else {
    clock = std::make_unique<rm::ManualClock>(rm::parse_timestamp(a.now));
  }

  std::unique_ptr<rm::GenerationBackend> backend;
  if (a.backend == "builtin") {
    backend = std::make_unique<rm::BuiltinBackend>(
        rm::BuiltinBackend::load(data_dir_or_default(common.data_dir)));
  } else {
    rm::RemoteBackendConfig cfg;
    if (!a.remote_url.empty()) cfg.base_url = a.remote_url;
    backend = std::make_unique<rm::RemoteBackend>(cfg);
  }

  std::unique_ptr<rm::CacheStore> cache =
      a.cache_path.empty() ? std::make_unique<rm::CacheStore>()
                           : std::make_unique<rm::CacheStore>(std::filesystem::path{a.cache_path});
  rm::Rng rng{a.seed.value_or(fresh_seed())};
  const rm::GenreMap genres = load_genres(common.genres_path);

  try {
    const rm::Rumour rumour = rm::mill_once(settings, *backend, *cache, genres, *clock, rng);
    std::cout << rm::plain_text(rm::render_ticket(rumour, a.width));
    return 0;
  } catch (const rm::NoRumourAvailable& e) {
    spdlog::warn("{}", e.what());
    std::cout << rm::plain_text(rm::render_apology("apology-" + rm::make_rumour_id(rng), settings,
                                                   clock->now(), a.width));
    return kExitNoRumour;
  }
}

struct Runtime {
  rm::ServiceConfig cfg;
  rm::GenreMap genres;
  std::unique_ptr<rm::BuiltinBackend> builtin;
  std::unique_ptr<rm::RemoteBackend> remote;
  std::unique_ptr<rm::HealthMonitor> monitor;
  std::unique_ptr<rm::CacheStore> cache;

  rm::GenerationBackend& backend() {
    return remote ? static_cast<rm::GenerationBackend&>(*remote) : *builtin;
  }
  std::function<bool()> backend_up() {
    if (!monitor) return [] { return true; };
    return [m = monitor.get()] { return m->up(); };
  }
};

Runtime make_runtime(rm::ServiceConfig cfg, const Common& common) {
  Runtime rt;
  if (!common.data_dir.empty()) cfg.data_dir = common.data_dir;
  if (!common.genres_path.empty()) cfg.genre_map = common.genres_path;
  rt.genres = cfg.genre_map ? rm::GenreMap::load(*cfg.genre_map) : rm::GenreMap::defaults();
  if (cfg.backend == rm::BackendKind::Builtin) {
    rt.builtin = std::make_unique<rm::BuiltinBackend>(
        rm::BuiltinBackend::load(cfg.data_dir.value_or(rm::default_data_dir())));
  } else {
    rt.remote = std::make_unique<rm::RemoteBackend>(cfg.remote);
    rt.monitor = std::make_unique<rm::HealthMonitor>(cfg.remote);
    rt.monitor->poll_once();
  }
  rt.cache = cfg.cache_path ? std::make_unique<rm::CacheStore>(*cfg.cache_path, cfg.cache_capacity)
                            : std::make_unique<rm::CacheStore>(cfg.cache_capacity);
  rt.cfg = std::move(cfg);
  return rt;
}

rm::ServiceConfig config_or_default(const std::string& path) {
  return path.empty() ? rm::ServiceConfig{} : rm::load_service_config(path);
}

int run_serve(const std::string& config_path, const Common& common) {
  const sigset_t signals = block_stop_signals();
  Runtime rt = make_runtime(config_or_default(config_path), common);
  const rm::SystemClock clock;
  const std::uint64_t seed = rt.cfg.seed.value_or(fresh_seed());

  if (rt.monitor) rt.monitor->start();
  rm::MillService service(rt.backend(), *rt.cache, rt.genres, clock, seed,
                          {rt.cfg.printer_width, {}, rt.cfg.spool_dir});
  rm::Refiller refiller(*rt.cache, rt.backend(), rt.genres, clock, rt.backend_up(), seed ^ 0x5eed,
                        {rt.cfg.refill_target, rt.cfg.refill_per_cycle, rt.cfg.refill_interval});
  rm::MillHttpApi api(service, clock, rt.backend_up(), {std::chrono::seconds{25}, rt.cfg.static_dir});

  const int port = api.start(rt.cfg.listen_host, rt.cfg.listen_port);
  refiller.start();
  spdlog::info("mill listening on http://{}:{}", rt.cfg.listen_host, port);

  const int sig = wait_for_signal(signals);
  spdlog::info("signal {} received, shutting down", sig);
  refiller.stop();
  service.shutdown();
  api.stop();
  if (rt.monitor) rt.monitor->stop();
  return 0;
}

int run_refill(const std::string& config_path, std::size_t target, const std::string& cache_path,
               const Common& common) {
  rm::ServiceConfig cfg = config_or_default(config_path);
  if (!cache_path.empty()) cfg.cache_path = cache_path;
  Runtime rt = make_runtime(std::move(cfg), common);
  const rm::SystemClock clock;
  rm::Refiller refiller(*rt.cache, rt.backend(), rt.genres, clock, rt.backend_up(),
                        rt.cfg.seed.value_or(fresh_seed()), {target, 0, {}});
  const auto report = refiller.run_pass(std::numeric_limits<std::size_t>::max());
  if (report.skipped) {
    std::cerr << "backend is down; nothing generated\n";
    return 1;
  }
  std::cout << fmt::format("requested {} stored {} failed {} total {}\n", report.requested,
                           report.stored, report.failed, rt.cache->total_size());
  return report.failed == 0 ? 0 : 1;
}

int run_reference_server(const std::string& host, int port, const Common& common) {
  const sigset_t signals = block_stop_signals();
  const auto backend = rm::BuiltinBackend::load(data_dir_or_default(common.data_dir));
  rm::ReferenceServer server(backend, load_genres(common.genres_path));
  const int bound = server.start(host, port);
  spdlog::info("reference generator listening on http://{}:{}", host, bound);
  wait_for_signal(signals);
  server.stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rumour mill: fake-news generator and ticket printer service"};
  app.require_subcommand(1);
  spdlog::set_default_logger(spdlog::stderr_color_mt("mill"));

  Common common;
  app.add_option("--data-dir", common.data_dir, "Directory with corpora/ and headlines/");
  app.add_option("--genres", common.genres_path, "Genre map file");

  OnceArgs once;
  auto* once_cmd = app.add_subcommand("once", "Mill one rumour and print the ticket");
  once_cmd->add_option("--wackiness", once.wackiness, "0..1")->required()->check(CLI::Range(0.0, 1.0));
  once_cmd->add_option("--genre", once.genre, "Genre name or slug")->required();
  once_cmd->add_option("--when", once.when, "past, present or future")->required();
  once_cmd->add_option("--seed", once.seed, "RNG seed");
  once_cmd->add_option("--backend", once.backend)
      ->check(CLI::IsMember({"builtin", "remote"}))
      ->capture_default_str();
  once_cmd->add_option("--remote-url", once.remote_url, "Generator base URL");
  once_cmd->add_option("--now", once.now, "Fixed clock, YYYY-MM-DDTHH:MM:SSZ");
  once_cmd->add_option("--cache", once.cache_path, "Cache journal to read and update");
  once_cmd->add_option("--width", once.width, "Ticket width in columns")->capture_default_str();

  std::string config_path;
  auto* serve_cmd = app.add_subcommand("serve", "Run the mill service");
  serve_cmd->add_option("--config", config_path, "Service config (JSON)");

  std::size_t target = 2;
  std::string refill_cache;
  auto* refill_cmd = app.add_subcommand("refill", "Top up the cache once");
  refill_cmd->add_option("--target", target, "Rumours per cache key")->required();
  refill_cmd->add_option("--config", config_path, "Service config (JSON)");
  refill_cmd->add_option("--cache", refill_cache, "Cache journal");

  std::string host = "127.0.0.1";
  int port = 8090;
  auto* ref_cmd = app.add_subcommand("reference-server", "Serve the generation protocol");
  ref_cmd->add_option("--host", host)->capture_default_str();
  ref_cmd->add_option("--port", port)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*once_cmd) return run_once(once, common);
    if (*serve_cmd) return run_serve(config_path, common);
    if (*refill_cmd) return run_refill(config_path, target, refill_cache, common);
    if (*ref_cmd) return run_reference_server(host, port, common);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 1;
}
