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

#include <compare>
#include <cstddef>
#include <deque>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rumour_mill/params.hpp"
#include "rumour_mill/rumour.hpp"

namespace rumour_mill {

inline constexpr int kWackinessBuckets = 4;
inline constexpr std::size_t kCacheKeySpace = kConcreteGenreCount * 3 * kWackinessBuckets;

// Ordering (genre, when, bucket) is the "key order" used by refill plans.
struct CacheKey {
  Genre genre = Genre::Politics;
  WhenSetting when = WhenSetting::Present;
  int bucket = 0;

  friend auto operator<=>(const CacheKey&, const CacheKey&) = default;

  // "politics/past/0"
  std::string to_string() const;
  // Throws OutOfRange on malformed text or a Random genre.
  static CacheKey parse(std::string_view text);
};

// floor(w * 4), with w = 1.0 clamped into bucket 3.
int wackiness_bucket(Wackiness w);

CacheKey cache_key(const MillSettings& settings, Genre effective_genre);

// All 132 keys in key order.
std::vector<CacheKey> all_cache_keys();

struct RefillItem {
  CacheKey key;
  std::size_t deficit = 0;

  friend bool operator==(const RefillItem&, const RefillItem&) = default;
};

// Per-key FIFO queues of rumours with optional journal persistence.
//
// Journal lines are `PUT <key> <base64(rumour json)>` and
// `TAKE <key> <rumour-id>`. On open the journal is replayed and rewritten
// as PUT records only. A final line without a newline is a torn write and
// is dropped; any other unparseable line throws JournalError.
//
// All methods are internally serialized, so the mill path and the refill
// worker may share one store.
class CacheStore {
 public:
  static constexpr std::size_t kDefaultCapacity = 8;

  enum class PutStatus { Stored, Degraded };

  // In-memory only.
  explicit CacheStore(std::size_t capacity = kDefaultCapacity);
  // Journal-backed. Throws JournalError if the existing journal is corrupt.
  CacheStore(std::filesystem::path journal, std::size_t capacity = kDefaultCapacity);

  CacheStore(const CacheStore&) = delete;
  CacheStore& operator=(const CacheStore&) = delete;

  // Appends; evicts the oldest entry when the queue is over capacity.
  // Degraded means the journal write failed but memory was updated.
  PutStatus put(const CacheKey& key, Rumour rumour);

  // Oldest entry for `key`, else the nearest non-empty bucket with the same
  // (genre, when), ties toward the lower bucket. The returned rumour has
  // provenance Cache.
  std::optional<Rumour> take(const CacheKey& key);

  std::size_t size(const CacheKey& key) const;
  std::size_t total_size() const;
  // Non-empty queues only.
  std::map<CacheKey, std::size_t> counts() const;
  std::vector<Rumour> contents(const CacheKey& key) const;

  // Keys below `target`, by descending deficit then key order. Throws
  // OutOfRange if target exceeds capacity.
  std::vector<RefillItem> refill_plan(std::size_t target) const;

  std::size_t capacity() const noexcept { return capacity_; }
  bool degraded() const;
  const std::optional<std::filesystem::path>& journal_path() const noexcept { return journal_; }

 private:
  void push_locked(const CacheKey& key, Rumour rumour);
  bool append_journal_locked(const std::string& line);
  void replay_and_compact();

  std::size_t capacity_;
  std::optional<std::filesystem::path> journal_;
  mutable std::mutex mu_;
  std::map<CacheKey, std::deque<Rumour>> queues_;
  bool degraded_ = false;
};

}  // namespace rumour_mill
