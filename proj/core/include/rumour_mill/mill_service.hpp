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
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <future>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "rumour_mill/backend.hpp"
#include "rumour_mill/cache.hpp"
#include "rumour_mill/clock.hpp"
#include "rumour_mill/panel.hpp"
#include "rumour_mill/params.hpp"
#include "rumour_mill/rng.hpp"
#include "rumour_mill/textgen.hpp"
#include "rumour_mill/ticket.hpp"

namespace rumour_mill {

struct MillServiceOptions {
  std::size_t printer_width = kDefaultTicketWidth;
  GenerationOptions generation;
  std::optional<std::filesystem::path> spool_dir;
};

// The installation controller. Owns the panel state and a single milling
// worker: every trigger snapshots the settings at trigger time and is
// served in order, producing exactly one ticket (an apology ticket when no
// rumour is available).
class MillService {
 public:
  MillService(GenerationBackend& backend, CacheStore& cache, GenreMap genres, const Clock& clock,
              std::uint64_t seed, MillServiceOptions options = {});
  ~MillService();

  MillService(const MillService&) = delete;
  MillService& operator=(const MillService&) = delete;

  // Stamps the event with clock.now() and applies it. Returns whether it
  // completed a crank. Throws InvalidEvent.
  bool submit_event(EventKind kind, int value);
  bool apply(const InputEvent& event);

  // Software trigger, equivalent to a full crank.
  std::future<Ticket> mill();

  PanelState panel() const;

  // Tickets issued after `since` (all tickets when absent or unknown). When
  // there are none yet, waits up to `wait` for the next one.
  std::vector<Ticket> tickets_since(const std::optional<std::string>& since,
                                    std::chrono::milliseconds wait) const;
  std::optional<Ticket> ticket(std::string_view id) const;
  std::vector<Ticket> tickets() const;

  std::size_t triggers() const;
  std::size_t tickets_issued() const;

  // Blocks until every queued trigger has produced its ticket.
  void drain();
  // Stops the worker after the queue empties and wakes long-pollers.
  void shutdown();

  const CacheStore& cache() const noexcept { return cache_; }

 private:
  struct Job {
    MillSettings settings;
    std::promise<Ticket> done;
  };

  std::future<Ticket> enqueue_locked(const MillSettings& settings);
  void worker_loop();
  Ticket run_job(const MillSettings& settings);

  GenerationBackend& backend_;
  CacheStore& cache_;
  const GenreMap genres_;
  const Clock& clock_;
  const MillServiceOptions options_;
  std::optional<TicketSpool> spool_;
  Rng rng_;  // worker thread only

  mutable std::mutex state_mu_;
  PanelState state_;
  std::deque<Job> queue_;
  std::size_t triggers_ = 0;
  bool busy_ = false;
  bool stopping_ = false;
  std::condition_variable queue_cv_;
  std::condition_variable idle_cv_;

  mutable std::mutex feed_mu_;
  mutable std::condition_variable feed_cv_;
  std::vector<Ticket> feed_;
  bool closed_ = false;

  std::thread worker_;
};

struct RefillOptions {
  std::size_t target = 2;
  std::size_t per_cycle = 5;
  std::chrono::milliseconds interval{60000};
};

// Background prefetch so that network drops are survivable. Each cycle,
// while the backend reports Up, generates at most `per_cycle` rumours for
// the keys in cache.refill_plan(target).
class Refiller {
 public:
  struct Report {
    bool skipped = false;  // backend down
    std::size_t requested = 0;
    std::size_t stored = 0;
    std::size_t failed = 0;
  };

  Refiller(CacheStore& cache, GenerationBackend& backend, GenreMap genres, const Clock& clock,
           std::function<bool()> backend_up, std::uint64_t seed, RefillOptions options = {});
  ~Refiller();

  Refiller(const Refiller&) = delete;
  Refiller& operator=(const Refiller&) = delete;

  Report run_cycle();
  // Repeats generation until the plan is empty or `max_generations` is hit.
  Report run_pass(std::size_t max_generations);

  void start();
  void stop();

 private:
  Report run_limited(std::size_t limit);

  CacheStore& cache_;
  GenerationBackend& backend_;
  const GenreMap genres_;
  const Clock& clock_;
  std::function<bool()> backend_up_;
  RefillOptions options_;
  std::mutex rng_mu_;
  Rng rng_;

  std::mutex mu_;
  std::condition_variable cv_;
  bool stopping_ = false;
  std::thread thread_;
};

// Settings used to generate stock for a key: the key's genre and when, and
// the midpoint of its wackiness bucket.
MillSettings settings_for_key(const CacheKey& key);

}  // namespace rumour_mill
