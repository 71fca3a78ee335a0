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

#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "rumour_mill/errors.hpp"
#include "test_support.hpp"

namespace rumour_mill {
namespace {

using testing::make_rumour;
using testing::TempDir;

const CacheKey kKey{Genre::Politics, WhenSetting::Past, 1};

std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::vector<std::string> ids(const std::vector<Rumour>& rumours) {
  std::vector<std::string> out;
  for (const auto& r : rumours) out.push_back(r.id);
  return out;
}

TEST(CacheKey, BucketExamples) {
  EXPECT_EQ(cache_key({Wackiness{0.0}, Genre::Politics, WhenSetting::Past}, Genre::Politics).bucket, 0);
  EXPECT_EQ(cache_key({Wackiness{1.0}, Genre::Politics, WhenSetting::Past}, Genre::Politics).bucket, 3);
  EXPECT_EQ(cache_key({Wackiness{0.49}, Genre::FoxSports, WhenSetting::Future}, Genre::FoxSports),
            (CacheKey{Genre::FoxSports, WhenSetting::Future, 1}));
}

TEST(CacheKey, BucketMatchesFloorOracle) {
  for (int i = 0; i <= 10000; ++i) {
    const double w = i / 10000.0;
    const int expected = std::min(3, static_cast<int>(w * 4));
    ASSERT_EQ(wackiness_bucket(Wackiness{w}), expected) << w;
  }
}

TEST(CacheKey, RandomUsesEffectiveGenre) {
  const CacheKey k = cache_key({Wackiness{0.6}, Genre::Random, WhenSetting::Present}, Genre::ChiTweets);
  EXPECT_EQ(k.genre, Genre::ChiTweets);
}

TEST(CacheKey, TextRoundTrip) {
  for (const CacheKey& k : all_cache_keys()) EXPECT_EQ(CacheKey::parse(k.to_string()), k);
  EXPECT_EQ((CacheKey{Genre::ConspiracyTheory, WhenSetting::Future, 2}.to_string()),
            "conspiracy-theory/future/2");
  EXPECT_THROW(CacheKey::parse("random/past/0"), OutOfRange);
  EXPECT_THROW(CacheKey::parse("politics/past/4"), OutOfRange);
  EXPECT_THROW(CacheKey::parse("politics/later/0"), OutOfRange);
  EXPECT_THROW(CacheKey::parse("politics/past"), OutOfRange);
}

TEST(CacheKey, KeySpaceIs132Distinct) {
  const auto keys = all_cache_keys();
  EXPECT_EQ(keys.size(), 11u * 3u * 4u);
  EXPECT_EQ(kCacheKeySpace, 132u);
  EXPECT_EQ(std::set<CacheKey>(keys.begin(), keys.end()).size(), 132u);
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
}

TEST(CacheStore, PutOneIntoEmpty) {
  CacheStore store;
  store.put(kKey, make_rumour("a"));
  EXPECT_EQ(store.size(kKey), 1u);
  EXPECT_EQ(store.total_size(), 1u);
}

TEST(CacheStore, EvictsOldestBeyondCapacity) {
  CacheStore store(8);
  for (int i = 0; i < 9; ++i) store.put(kKey, make_rumour(std::to_string(i)));
  EXPECT_EQ(ids(store.contents(kKey)),
            (std::vector<std::string>{"1", "2", "3", "4", "5", "6", "7", "8"}));
}

TEST(CacheStore, TakeIsFifo) {
  CacheStore store;
  store.put(kKey, make_rumour("old"));
  store.put(kKey, make_rumour("new"));
  const auto r = store.take(kKey);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->id, "old");
  EXPECT_EQ(r->provenance, Provenance::Cache);
  EXPECT_EQ(store.size(kKey), 1u);
}

TEST(CacheStore, FallsBackToNearestBucketTiesLow) {
  CacheStore store;
  const CacheKey b0{Genre::Politics, WhenSetting::Past, 0};
  const CacheKey b2{Genre::Politics, WhenSetting::Past, 2};
  const CacheKey b3{Genre::Politics, WhenSetting::Past, 3};
  store.put(b0, make_rumour("zero"));
  store.put(b2, make_rumour("two"));
  store.put(b3, make_rumour("three"));
  // From bucket 1, buckets 0 and 2 are equally near.
  EXPECT_EQ(store.take(kKey)->id, "zero");
  EXPECT_EQ(store.take(kKey)->id, "two");
  EXPECT_EQ(store.take(kKey)->id, "three");
  EXPECT_FALSE(store.take(kKey));
}

TEST(CacheStore, NeverCrossesGenreOrWhen) {
  CacheStore store;
  store.put({Genre::Politics, WhenSetting::Present, 1}, make_rumour("a"));
  store.put({Genre::FoxSports, WhenSetting::Past, 1}, make_rumour("b"));
  EXPECT_FALSE(store.take(kKey));
  EXPECT_EQ(store.total_size(), 2u);
}

TEST(CacheStore, RefillPlanEmptyStore) {
  CacheStore store;
  const auto plan = store.refill_plan(2);
  ASSERT_EQ(plan.size(), 132u);
  for (const auto& item : plan) EXPECT_EQ(item.deficit, 2u);
  EXPECT_EQ(plan.front().key, all_cache_keys().front());
}

TEST(CacheStore, RefillPlanPartialAndFull) {
  CacheStore store;
  for (const auto& k : all_cache_keys()) {
    store.put(k, make_rumour(k.to_string() + "-1"));
    store.put(k, make_rumour(k.to_string() + "-2"));
  }
  EXPECT_TRUE(store.refill_plan(2).empty());
  store.take(kKey);
  EXPECT_EQ(store.refill_plan(2), (std::vector<RefillItem>{{kKey, 1}}));
}

TEST(CacheStore, RefillPlanOrdersByDeficit) {
  CacheStore store;
  for (const auto& k : all_cache_keys()) store.put(k, make_rumour(k.to_string()));
  const CacheKey last{Genre::RussiaToday, WhenSetting::Future, 3};
  store.take(last);
  const auto plan = store.refill_plan(2);
  ASSERT_EQ(plan.size(), 132u);
  EXPECT_EQ(plan.front(), (RefillItem{last, 2}));
  EXPECT_EQ(plan[1].deficit, 1u);
  EXPECT_THROW(store.refill_plan(9), OutOfRange);
}

TEST(CacheStore, ZeroCapacityRejected) { EXPECT_THROW(CacheStore(0), OutOfRange); }

TEST(CacheJournal, SurvivesRestart) {
  TempDir dir;
  const auto path = dir / "cache.journal";
  {
    CacheStore store(path);
    store.put(kKey, make_rumour("a"));
    store.put(kKey, make_rumour("b"));
    store.put({Genre::ChiTweets, WhenSetting::Future, 3}, make_rumour("c"));
    EXPECT_EQ(store.take(kKey)->id, "a");
  }
  CacheStore reopened(path);
  EXPECT_EQ(ids(reopened.contents(kKey)), (std::vector<std::string>{"b"}));
  EXPECT_EQ(reopened.size({Genre::ChiTweets, WhenSetting::Future, 3}), 1u);
  const Rumour back = reopened.contents(kKey).front();
  EXPECT_EQ(back, make_rumour("b"));
}

TEST(CacheJournal, CompactedToPutsOnOpen) {
  TempDir dir;
  const auto path = dir / "cache.journal";
  {
    CacheStore store(path);
    store.put(kKey, make_rumour("a"));
    store.put(kKey, make_rumour("b"));
    store.take(kKey);
  }
  CacheStore reopened(path);
  const std::string text = read_all(path);
  EXPECT_EQ(text.find("TAKE"), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
  EXPECT_FALSE(std::filesystem::exists(dir / "cache.journal.tmp"));
}

TEST(CacheJournal, TornFinalLineIgnored) {
  TempDir dir;
  const auto path = dir / "cache.journal";
  {
    CacheStore store(path);
    store.put(kKey, make_rumour("a"));
  }
  {
    std::ofstream out(path, std::ios::app);
    out << "PUT politics/past/1 eyJpZCI6";
  }
  CacheStore reopened(path);
  EXPECT_EQ(ids(reopened.contents(kKey)), (std::vector<std::string>{"a"}));
}

TEST(CacheJournal, CorruptLineThrows) {
  TempDir dir;
  const auto path = dir / "cache.journal";
  for (const char* bad : {"BOGUS politics/past/1 x\n", "PUT politics/past/1 !!!\n",
                          "PUT nowhere/past/1 eyJ9\n", "TAKE politics/past/1 ghost-but-not\n"}) {
    {
      std::ofstream out(path, std::ios::trunc);
      out << bad;
    }
    if (std::string_view(bad).rfind("TAKE", 0) == 0) {
      // A TAKE for an unknown id is a leftover eviction, not corruption.
      EXPECT_NO_THROW(CacheStore{path}) << bad;
    } else {
      EXPECT_THROW(CacheStore{path}, JournalError) << bad;
    }
  }
}

TEST(CacheJournal, ShrunkCapacityReplays) {
  TempDir dir;
  const auto path = dir / "cache.journal";
  {
    CacheStore store(path, 4);
    for (int i = 0; i < 4; ++i) store.put(kKey, make_rumour(std::to_string(i)));
    store.take(kKey);
  }
  // The journal still holds the TAKE of an entry that capacity 2 evicts.
  CacheStore small(path, 2);
  EXPECT_EQ(ids(small.contents(kKey)), (std::vector<std::string>{"2", "3"}));
}

TEST(CacheJournal, DegradedWriteThenRecovery) {
  TempDir dir;
  const auto sub = dir / "journal-dir";
  std::filesystem::create_directories(sub);
  const auto path = sub / "cache.journal";
  CacheStore store(path);
  EXPECT_EQ(store.put(kKey, make_rumour("a")), CacheStore::PutStatus::Stored);

  std::filesystem::remove_all(sub);
  EXPECT_EQ(store.put(kKey, make_rumour("b")), CacheStore::PutStatus::Degraded);
  EXPECT_TRUE(store.degraded());
  // Memory keeps serving while the disk is gone.
  EXPECT_EQ(store.size(kKey), 2u);

  std::filesystem::create_directories(sub);
  EXPECT_EQ(store.put(kKey, make_rumour("c")), CacheStore::PutStatus::Stored);
  EXPECT_FALSE(store.degraded());
  CacheStore reopened(path);
  EXPECT_EQ(ids(reopened.contents(kKey)), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(RumourJson, RoundTripAndErrors) {
  Rumour r = make_rumour("xyz", {Wackiness{0.25}, Genre::Random, WhenSetting::Future},
                         Genre::CelebrityGossip);
  r.headline = "Unicode caf\xC3\xA9 \"quoted\"\nline";
  r.provenance = Provenance::Cache;
  EXPECT_EQ(deserialize_rumour(serialize_rumour(r)), r);
  EXPECT_THROW(deserialize_rumour("{"), JournalError);
  EXPECT_THROW(deserialize_rumour("{}"), JournalError);
  EXPECT_THROW(deserialize_rumour("[1,2]"), JournalError);
}

}  // namespace
}  // namespace rumour_mill
