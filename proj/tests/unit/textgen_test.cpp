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

#include "rumour_mill/textgen.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <iterator>
#include <regex>
#include <set>

#include "rumour_mill/builtin_backend.hpp"
#include "rumour_mill/cache.hpp"
#include "rumour_mill/errors.hpp"
#include "rumour_mill/ngram.hpp"
#include "test_support.hpp"

namespace rumour_mill {
namespace {

using testing::at;
using testing::data_dir;

const BuiltinBackend& shipped() {
  static const BuiltinBackend backend = BuiltinBackend::load(data_dir());
  return backend;
}

std::set<std::string> phrases_in_file(const std::string& slug) {
  std::ifstream in(data_dir() / "headlines" / (slug + ".headlines.tsv"));
  const std::string text(std::istreambuf_iterator<char>(in), {});
  const HeadlineGrammar g = parse_headline_grammar(text);
  std::set<std::string> out;
  for (const auto* col : {&g.subjects, &g.predicates, &g.objects}) out.insert(col->begin(), col->end());
  return out;
}

TEST(HeadlineGrammar, ParsesColumnsAndSkipsComments) {
  const HeadlineGrammar g = parse_headline_grammar(
      "# s\tp\to\nThe mayor\tbans\tsmall dogs\n\tloves\t\nA cat\t\tthe moon\n");
  EXPECT_EQ(g.subjects, (std::vector<std::string>{"The mayor", "A cat"}));
  EXPECT_EQ(g.predicates, (std::vector<std::string>{"bans", "loves"}));
  EXPECT_EQ(g.objects, (std::vector<std::string>{"small dogs", "the moon"}));
}

TEST(HeadlineGrammar, RejectsBadShapes) {
  EXPECT_THROW(parse_headline_grammar("a\tb\n"), ConfigError);
  EXPECT_THROW(parse_headline_grammar("a\tb\tc\td\n"), ConfigError);
  // 1 + 1 + 1 words is below the minimum.
  EXPECT_THROW(parse_headline_grammar("a\tb\tc\n"), ConfigError);
  EXPECT_THROW(parse_headline_grammar("a b c d e\tf g h i j\tk l m n o\n"), ConfigError);
}

TEST(BuiltinBackend, LoadsAllConcreteGenres) {
  for (Genre g : kConcreteGenres) {
    EXPECT_TRUE(shipped().grammars().count(g)) << genre_slug(g);
    EXPECT_TRUE(shipped().models().count(g)) << genre_slug(g);
  }
}

TEST(BuiltinBackend, MissingDirectory) {
  EXPECT_THROW(BuiltinBackend::load("/nonexistent/rumour-data"), ConfigError);
}

TEST(BuiltinBackend, MissingGenreData) {
  testing::TempDir dir;
  std::filesystem::create_directories(dir / "headlines");
  const BuiltinBackend empty = BuiltinBackend::load(dir.path());
  EXPECT_THROW(empty.headline_with_seed(1.0, Genre::Politics, 1), ConfigMissing);
  ControlSpec spec;
  EXPECT_THROW(empty.story_with_seed("x", spec, 1, 20), ConfigMissing);
}

TEST(BuiltinBackend, HeadlineDeterministicAndBounded) {
  for (Genre g : kConcreteGenres) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const std::string h = shipped().headline_with_seed(1.5, g, seed);
      ASSERT_EQ(h, shipped().headline_with_seed(1.5, g, seed));
      const auto words = tokenize(h).size();
      ASSERT_GE(words, static_cast<std::size_t>(kMinHeadlineWords)) << h;
      ASSERT_LE(words, static_cast<std::size_t>(kMaxHeadlineWords)) << h;
    }
  }
}

TEST(BuiltinBackend, PoliticsAndSportsDrawFromDisjointPhraseLists) {
  const auto politics = phrases_in_file("politics");
  const auto sports = phrases_in_file("fox-sports");
  for (const auto& p : politics) EXPECT_FALSE(sports.count(p)) << p;

  auto uses_only = [](const std::string& headline, const std::set<std::string>& phrases,
                      const HeadlineGrammar& g) {
    for (const auto& s : g.subjects) {
      for (const auto& p : g.predicates) {
        for (const auto& o : g.objects) {
          if (s + " " + p + " " + o == headline) {
            return phrases.count(s) && phrases.count(p) && phrases.count(o);
          }
        }
      }
    }
    return false;
  };
  const auto& pg = shipped().grammars().at(Genre::Politics);
  const auto& sg = shipped().grammars().at(Genre::FoxSports);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto ph = shipped().headline_with_seed(1.0, Genre::Politics, seed);
    const auto sh = shipped().headline_with_seed(1.0, Genre::FoxSports, seed);
    ASSERT_TRUE(uses_only(ph, politics, pg)) << ph;
    ASSERT_TRUE(uses_only(sh, sports, sg)) << sh;
    ASSERT_FALSE(uses_only(ph, sports, sg)) << ph;
  }
}

TEST(BuiltinBackend, StoryHasDatelineAndIsDeterministic) {
  Rng rng{4};
  const ControlSpec spec = build_control_spec({Wackiness{0.5}, Genre::ScienceNews, WhenSetting::Past},
                                              parse_date("2020-05-04"), rng, GenreMap::defaults());
  const std::string a = shipped().story_with_seed("Researchers grow tomatoes.", spec, 9, 120);
  EXPECT_EQ(a, shipped().story_with_seed("Researchers grow tomatoes.", spec, 9, 120));
  EXPECT_EQ(a.rfind(format_dateline(spec.target_date) + " - ", 0), 0u) << a;
}

TEST(BuiltinBackend, StoryPrefersOpeningsSharingHeadlineWords) {
  ControlSpec spec;
  spec.effective_genre = Genre::ScienceNews;
  spec.temperature = 1.0;
  spec.target_date = parse_date("2020-05-04");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::string story = shipped().story_with_seed("Octopuses everywhere.", spec, seed, 40);
    EXPECT_NE(story.find("octopuses"), std::string::npos) << story;
  }
}

TEST(Dateline, Format) {
  EXPECT_EQ(format_dateline(parse_date("2020-05-04")), "May 4, 2020");
  EXPECT_EQ(format_dateline(parse_date("1999-12-31")), "December 31, 1999");
}

TEST(StorySeed, AppendsPeriodOnlyWhenNeeded) {
  EXPECT_EQ(story_seed("Cats rule"), "Cats rule.");
  EXPECT_EQ(story_seed("Cats rule!"), "Cats rule!");
  EXPECT_EQ(story_seed("Cats rule."), "Cats rule.");
}

TEST(RumourId, SixteenHexDigits) {
  Rng rng{1};
  for (int i = 0; i < 100; ++i) {
    EXPECT_TRUE(std::regex_match(make_rumour_id(rng), std::regex("[0-9a-f]{16}")));
  }
}

TEST(MillOnce, LiveWithBuiltinBackend) {
  BuiltinBackend backend = BuiltinBackend::load(data_dir());
  CacheStore cache;
  ManualClock clock{at("2020-05-04T10:00:00Z")};
  Rng rng{5};
  const MillSettings s{Wackiness{0.5}, Genre::Politics, WhenSetting::Present};
  const Rumour r = mill_once(s, backend, cache, GenreMap::defaults(), clock, rng);
  EXPECT_EQ(r.provenance, Provenance::Live);
  EXPECT_FALSE(r.headline.empty());
  EXPECT_FALSE(r.body.empty());
  EXPECT_EQ(r.settings, s);
  EXPECT_EQ(r.created_at, clock.now());
  EXPECT_DOUBLE_EQ(r.spec.temperature, 0.85);
  // A copy is deposited for later outages.
  EXPECT_EQ(cache.size(cache_key(s, Genre::Politics)), 1u);
}

TEST(MillOnce, SameSeedSameRumour) {
  BuiltinBackend backend = BuiltinBackend::load(data_dir());
  ManualClock clock{at("2021-02-28T08:00:00Z")};
  const MillSettings s{Wackiness{0.9}, Genre::Random, WhenSetting::Future};
  CacheStore c1, c2;
  Rng r1{77}, r2{77};
  EXPECT_EQ(mill_once(s, backend, c1, GenreMap::defaults(), clock, r1),
            mill_once(s, backend, c2, GenreMap::defaults(), clock, r2));
}

TEST(MillOnce, FallsBackToCache) {
  testing::FailingBackend backend;
  CacheStore cache;
  ManualClock clock{at("2020-05-04T10:00:00Z")};
  const MillSettings s{Wackiness{0.3}, Genre::FoxSports, WhenSetting::Past};
  cache.put(cache_key(s, Genre::FoxSports), testing::make_rumour("stocked", s, Genre::FoxSports));
  Rng rng{1};
  const Rumour r = mill_once(s, backend, cache, GenreMap::defaults(), clock, rng);
  EXPECT_EQ(r.provenance, Provenance::Cache);
  EXPECT_EQ(r.id, "stocked");
  EXPECT_EQ(r.settings, s);
  EXPECT_EQ(cache.total_size(), 0u);
}

TEST(MillOnce, DoubleFailure) {
  testing::FailingBackend backend;
  CacheStore cache;
  ManualClock clock{at("2020-05-04T10:00:00Z")};
  Rng rng{1};
  EXPECT_THROW(mill_once({Wackiness{0.3}, Genre::FoxSports, WhenSetting::Past}, backend, cache,
                         GenreMap::defaults(), clock, rng),
               NoRumourAvailable);
}

TEST(MillOnce, CacheKeyUsesEffectiveGenreForRandom) {
  testing::ScriptedBackend backend;
  CacheStore cache;
  ManualClock clock{at("2020-05-04T10:00:00Z")};
  Rng rng{12};
  const Rumour r = mill_once({Wackiness{0.6}, Genre::Random, WhenSetting::Present}, backend, cache,
                             GenreMap::defaults(), clock, rng);
  const CacheKey key{r.spec.effective_genre, WhenSetting::Present, 2};
  EXPECT_EQ(cache.size(key), 1u);
  EXPECT_EQ(r.headline, "Headline about " + std::string(genre_slug(r.spec.effective_genre)));
  EXPECT_EQ(r.body, "Story following " + story_seed(r.headline));
}

}  // namespace
}  // namespace rumour_mill
