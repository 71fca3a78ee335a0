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

#include "rumour_mill/cache.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rumour_mill/errors.hpp"

namespace rumour_mill {

namespace {

std::string base64_encode(std::string_view data) {
  std::string out(4 * ((data.size() + 2) / 3) + 1, '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(data.data()),
                                static_cast<int>(data.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::optional<std::string> base64_decode(std::string_view text) {
  if (text.empty() || text.size() % 4 != 0) return std::nullopt;
  std::string out(text.size() / 4 * 3, '\0');
  const int n = EVP_DecodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(text.data()),
                                static_cast<int>(text.size()));
  if (n < 0) return std::nullopt;
  std::size_t padding = 0;
  if (text.back() == '=') ++padding;
  if (text.size() >= 2 && text[text.size() - 2] == '=') ++padding;
  out.resize(static_cast<std::size_t>(n) - padding);
  return out;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto sp = line.find(' ');
    parts.push_back(line.substr(0, sp));
    if (sp == std::string_view::npos) break;
    line = line.substr(sp + 1);
  }
  return parts;
}

std::string put_record(const CacheKey& key, const Rumour& rumour) {
  return fmt::format("PUT {} {}", key.to_string(), base64_encode(serialize_rumour(rumour)));
}

}  // namespace

std::string CacheKey::to_string() const {
  return fmt::format("{}/{}/{}", genre_slug(genre), when_name(when), bucket);
}

CacheKey CacheKey::parse(std::string_view text) {
  auto fail = [&] { return OutOfRange(fmt::format("malformed cache key '{}'", text)); };
  const auto a = text.find('/');
  const auto b = a == std::string_view::npos ? a : text.find('/', a + 1);
  if (b == std::string_view::npos) throw fail();
  const auto genre = genre_from_name(text.substr(0, a));
  const auto when = when_from_name(text.substr(a + 1, b - a - 1));
  const std::string_view bucket = text.substr(b + 1);
  if (!genre || *genre == Genre::Random || !when || bucket.size() != 1 || bucket[0] < '0' ||
      bucket[0] >= '0' + kWackinessBuckets) {
    throw fail();
  }
  return CacheKey{*genre, *when, bucket[0] - '0'};
}

int wackiness_bucket(Wackiness w) {
  return std::min(static_cast<int>(w.value() * kWackinessBuckets), kWackinessBuckets - 1);
}

CacheKey cache_key(const MillSettings& settings, Genre effective_genre) {
  return CacheKey{effective_genre, settings.when, wackiness_bucket(settings.wackiness)};
}

std::vector<CacheKey> all_cache_keys() {
  std::vector<CacheKey> keys;
  keys.reserve(kCacheKeySpace);
  for (Genre g : kConcreteGenres) {
    for (WhenSetting w : kAllWhens) {
      for (int b = 0; b < kWackinessBuckets; ++b) keys.push_back({g, w, b});
    }
  }
  return keys;
}

CacheStore::CacheStore(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw OutOfRange("cache capacity must be positive");
}

CacheStore::CacheStore(std::filesystem::path journal, std::size_t capacity)
    : capacity_(capacity), journal_(std::move(journal)) {
  if (capacity_ == 0) throw OutOfRange("cache capacity must be positive");
  replay_and_compact();
}

void CacheStore::replay_and_compact() {
  const auto& path = *journal_;
  if (std::filesystem::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw JournalError(fmt::format("cannot read journal '{}'", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    std::size_t pos = 0, line_no = 0;
    while (pos < text.size()) {
      const auto nl = text.find('\n', pos);
      if (nl == std::string::npos) break;  // torn final write
      const std::string_view line{text.data() + pos, nl - pos};
      pos = nl + 1;
      ++line_no;
      auto fail = [&](std::string_view why) {
        return JournalError(fmt::format("{}:{}: {}", path.string(), line_no, why));
      };

      const auto parts = split_spaces(line);
      if (parts.size() != 3) throw fail("expected 3 fields");
      CacheKey key;
      try {
        key = CacheKey::parse(parts[1]);
      } catch (const OutOfRange& e) {
        throw fail(e.what());
      }
      if (parts[0] == "PUT") {
        const auto blob = base64_decode(parts[2]);
        if (!blob) throw fail("bad base64 payload");
        push_locked(key, deserialize_rumour(*blob));
      } else if (parts[0] == "TAKE") {
        auto it = queues_.find(key);
        const bool present =
            it != queues_.end() &&
            std::any_of(it->second.begin(), it->second.end(),
                        [&](const Rumour& r) { return r.id == parts[2]; });
        // Already evicted when the store was reopened with a smaller capacity.
        if (!present) continue;
        if (it->second.front().id != parts[2]) {
          throw fail(fmt::format("TAKE of '{}' does not match the head of {}", parts[2],
                                 key.to_string()));
        }
        it->second.pop_front();
      } else {
        throw fail(fmt::format("unknown record '{}'", parts[0]));
      }
    }
  }

  // Rewrite as PUT records only, via rename so a crash leaves either file.
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    for (const auto& [key, queue] : queues_) {
      for (const auto& rumour : queue) out << put_record(key, rumour) << '\n';
    }
    out.flush();
    if (!out) {
      degraded_ = true;
      return;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) degraded_ = true;
}

void CacheStore::push_locked(const CacheKey& key, Rumour rumour) {
  auto& queue = queues_[key];
  queue.push_back(std::move(rumour));
  while (queue.size() > capacity_) queue.pop_front();
}

bool CacheStore::append_journal_locked(const std::string& line) {
  if (!journal_) return true;
  if (degraded_) {
    // Earlier records were lost; rewrite the whole journal from memory.
    auto tmp = *journal_;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    for (const auto& [key, queue] : queues_) {
      for (const auto& rumour : queue) out << put_record(key, rumour) << '\n';
    }
    out.flush();
    if (!out) return false;
    out.close();
    std::error_code ec;
    std::filesystem::rename(tmp, *journal_, ec);
    if (ec) return false;
    degraded_ = false;
    return true;
  }
  std::ofstream out(*journal_, std::ios::binary | std::ios::app);
  out << line << '\n';
  out.flush();
  return static_cast<bool>(out);
}

CacheStore::PutStatus CacheStore::put(const CacheKey& key, Rumour rumour) {
  std::lock_guard lock(mu_);
  std::string record = journal_ ? put_record(key, rumour) : std::string{};
  push_locked(key, std::move(rumour));
  if (!append_journal_locked(record)) {
    degraded_ = true;
    return PutStatus::Degraded;
  }
  return PutStatus::Stored;
}

std::optional<Rumour> CacheStore::take(const CacheKey& key) {
  std::lock_guard lock(mu_);
  for (int distance = 0; distance < kWackinessBuckets; ++distance) {
    for (int bucket : {key.bucket - distance, key.bucket + distance}) {
      if (bucket < 0 || bucket >= kWackinessBuckets) continue;
      const CacheKey candidate{key.genre, key.when, bucket};
      auto it = queues_.find(candidate);
      if (it == queues_.end() || it->second.empty()) continue;
      Rumour rumour = std::move(it->second.front());
      it->second.pop_front();
      if (!append_journal_locked(fmt::format("TAKE {} {}", candidate.to_string(), rumour.id))) {
        degraded_ = true;
      }
      rumour.provenance = Provenance::Cache;
      return rumour;
    }
  }
  return std::nullopt;
}

std::size_t CacheStore::size(const CacheKey& key) const {
  std::lock_guard lock(mu_);
  const auto it = queues_.find(key);
  return it == queues_.end() ? 0 : it->second.size();
}

std::size_t CacheStore::total_size() const {
  std::lock_guard lock(mu_);
  std::size_t total = 0;
  for (const auto& [key, queue] : queues_) total += queue.size();
  return total;
}

std::map<CacheKey, std::size_t> CacheStore::counts() const {
  std::lock_guard lock(mu_);
  std::map<CacheKey, std::size_t> out;
  for (const auto& [key, queue] : queues_) {
    if (!queue.empty()) out.emplace(key, queue.size());
  }
  return out;
}

std::vector<Rumour> CacheStore::contents(const CacheKey& key) const {
  std::lock_guard lock(mu_);
  const auto it = queues_.find(key);
  if (it == queues_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

std::vector<RefillItem> CacheStore::refill_plan(std::size_t target) const {
  if (target > capacity_) {
    throw OutOfRange(fmt::format("refill target {} exceeds capacity {}", target, capacity_));
  }
  std::lock_guard lock(mu_);
  std::vector<RefillItem> plan;
  for (const auto& key : all_cache_keys()) {
    const auto it = queues_.find(key);
    const std::size_t have = it == queues_.end() ? 0 : it->second.size();
    if (have < target) plan.push_back({key, target - have});
  }
  std::stable_sort(plan.begin(), plan.end(),
                   [](const RefillItem& a, const RefillItem& b) { return a.deficit > b.deficit; });
  return plan;
}

bool CacheStore::degraded() const {
  std::lock_guard lock(mu_);
  return degraded_;
}

}  // namespace rumour_mill
