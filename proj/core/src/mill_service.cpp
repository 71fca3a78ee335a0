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

#include "rumour_mill/mill_service.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <limits>

#include "rumour_mill/errors.hpp"

namespace rumour_mill {

MillService::MillService(GenerationBackend& backend, CacheStore& cache, GenreMap genres,
                         const Clock& clock, std::uint64_t seed, MillServiceOptions options)
    : backend_(backend),
      cache_(cache),
      genres_(std::move(genres)),
      clock_(clock),
      options_(std::move(options)),
      rng_(seed) {
  if (options_.spool_dir) spool_.emplace(*options_.spool_dir);
  worker_ = std::thread([this] { worker_loop(); });
}

MillService::~MillService() { shutdown(); }

bool MillService::submit_event(EventKind kind, int value) {
  return apply(InputEvent{kind, value, clock_.now()});
}

bool MillService::apply(const InputEvent& event) {
  std::lock_guard lock(state_mu_);
  const ApplyResult result = apply_event(state_, event);
  state_ = result.state;
  if (result.trigger) enqueue_locked(current_settings(state_));
  return result.trigger;
}

std::future<Ticket> MillService::mill() {
  std::lock_guard lock(state_mu_);
  return enqueue_locked(current_settings(state_));
}

std::future<Ticket> MillService::enqueue_locked(const MillSettings& settings) {
  if (stopping_) throw Error("mill service is shutting down");
  ++triggers_;
  queue_.push_back(Job{settings, {}});
  auto future = queue_.back().done.get_future();
  queue_cv_.notify_one();
  return future;
}

void MillService::worker_loop() {
  std::unique_lock lock(state_mu_);
  while (true) {
    queue_cv_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
    if (queue_.empty()) break;
    Job job = std::move(queue_.front());
    queue_.pop_front();
    busy_ = true;
    lock.unlock();
    try {
      job.done.set_value(run_job(job.settings));
    } catch (...) {
      job.done.set_exception(std::current_exception());
    }
    lock.lock();
    busy_ = false;
    idle_cv_.notify_all();
  }
}

Ticket MillService::run_job(const MillSettings& settings) {
  Ticket ticket;
  try {
    const Rumour rumour =
        mill_once(settings, backend_, cache_, genres_, clock_, rng_, options_.generation);
    ticket = render_ticket(rumour, options_.printer_width);
  } catch (const std::exception& e) {
    // Includes NoRumourAvailable; the visitor still gets a printout.
    spdlog::warn("milling failed, printing apology: {}", e.what());
    ticket = render_apology("apology-" + make_rumour_id(rng_), settings, clock_.now(),
                            options_.printer_width);
  }
  if (spool_) {
    try {
      spool_->write(ticket);
    } catch (const std::exception& e) {
      spdlog::error("spooling ticket {} failed: {}", ticket.id, e.what());
    }
  }
  {
    std::lock_guard lock(feed_mu_);
    feed_.push_back(ticket);
  }
  feed_cv_.notify_all();
  return ticket;
}

PanelState MillService::panel() const {
  std::lock_guard lock(state_mu_);
  return state_;
}

std::vector<Ticket> MillService::tickets_since(const std::optional<std::string>& since,
                                               std::chrono::milliseconds wait) const {
  std::unique_lock lock(feed_mu_);
  auto collect = [&] {
    std::size_t from = 0;
    if (since) {
      const auto it = std::find_if(feed_.begin(), feed_.end(),
                                   [&](const Ticket& t) { return t.id == *since; });
      if (it != feed_.end()) from = static_cast<std::size_t>(it - feed_.begin()) + 1;
    }
    return std::vector<Ticket>(feed_.begin() + static_cast<std::ptrdiff_t>(from), feed_.end());
  };
  auto out = collect();
  if (!out.empty() || wait.count() <= 0) return out;
  const std::size_t seen = feed_.size();
  feed_cv_.wait_for(lock, wait, [&] { return closed_ || feed_.size() > seen; });
  return collect();
}

std::optional<Ticket> MillService::ticket(std::string_view id) const {
  std::lock_guard lock(feed_mu_);
  for (const auto& t : feed_) {
    if (t.id == id) return t;
  }
  return std::nullopt;
}

std::vector<Ticket> MillService::tickets() const {
  std::lock_guard lock(feed_mu_);
  return feed_;
}

std::size_t MillService::triggers() const {
  std::lock_guard lock(state_mu_);
  return triggers_;
}

std::size_t MillService::tickets_issued() const {
  std::lock_guard lock(feed_mu_);
  return feed_.size();
}

void MillService::drain() {
  std::unique_lock lock(state_mu_);
  idle_cv_.wait(lock, [this] { return queue_.empty() && !busy_; });
}

void MillService::shutdown() {
  {
    std::lock_guard lock(state_mu_);
    stopping_ = true;
  }
  queue_cv_.notify_all();
  if (worker_.joinable()) worker_.join();
  {
    std::lock_guard lock(feed_mu_);
    closed_ = true;
  }
  feed_cv_.notify_all();
}

MillSettings settings_for_key(const CacheKey& key) {
  return MillSettings{Wackiness{(key.bucket + 0.5) / kWackinessBuckets}, key.genre, key.when};
}

Refiller::Refiller(CacheStore& cache, GenerationBackend& backend, GenreMap genres,
                   const Clock& clock, std::function<bool()> backend_up, std::uint64_t seed,
                   RefillOptions options)
    : cache_(cache),
      backend_(backend),
      genres_(std::move(genres)),
      clock_(clock),
      backend_up_(std::move(backend_up)),
      options_(options),
      rng_(seed) {}

Refiller::~Refiller() { stop(); }

Refiller::Report Refiller::run_cycle() { return run_limited(options_.per_cycle); }

Refiller::Report Refiller::run_pass(std::size_t max_generations) {
  return run_limited(max_generations);
}

Refiller::Report Refiller::run_limited(std::size_t limit) {
  std::lock_guard lock(rng_mu_);
  Report report;
  if (!backend_up_()) {
    report.skipped = true;
    return report;
  }
  for (const RefillItem& item : cache_.refill_plan(options_.target)) {
    for (std::size_t i = 0; i < item.deficit; ++i) {
      if (report.requested >= limit) return report;
      ++report.requested;
      try {
        Rumour rumour =
            generate_rumour(settings_for_key(item.key), backend_, genres_, clock_, rng_);
        cache_.put(item.key, std::move(rumour));
        ++report.stored;
      } catch (const BackendError& e) {
        ++report.failed;
        spdlog::warn("refill of {} failed: {}", item.key.to_string(), e.what());
      }
    }
  }
  return report;
}

void Refiller::start() {
  if (thread_.joinable()) return;
  {
    std::lock_guard lock(mu_);
    stopping_ = false;
  }
  thread_ = std::thread([this] {
    std::unique_lock lock(mu_);
    while (!stopping_) {
      lock.unlock();
      try {
        const Report r = run_cycle();
        if (r.requested > 0) {
          spdlog::info("refill cycle: {} requested, {} stored, {} failed", r.requested, r.stored,
                       r.failed);
        }
      } catch (const std::exception& e) {
        spdlog::error("refill cycle aborted: {}", e.what());
      }
      lock.lock();
      cv_.wait_for(lock, options_.interval, [this] { return stopping_; });
    }
  });
}

void Refiller::stop() {
  {
    std::lock_guard lock(mu_);
    stopping_ = true;
  }
  cv_.notify_all();
  if (thread_.joinable()) thread_.join();
}

}  // namespace rumour_mill
