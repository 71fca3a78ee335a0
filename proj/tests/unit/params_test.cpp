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

#include "rumour_mill/params.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <regex>
#include <set>

#include "rumour_mill/errors.hpp"
#include "test_support.hpp"

namespace rumour_mill {
namespace {

// Plain civil-calendar oracle, independent of <chrono>: walks days one at a
// time using a month-length table.
struct Ymd {
  int y, m, d;
  friend bool operator==(const Ymd&, const Ymd&) = default;
};

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int month_len(int y, int m) {
  static constexpr int kLen[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && leap(y) ? 29 : kLen[m - 1];
}

Ymd next_day(Ymd x) {
  if (++x.d > month_len(x.y, x.m)) {
    x.d = 1;
    if (++x.m > 12) {
      x.m = 1;
      ++x.y;
    }
  }
  return x;
}

Ymd prev_day(Ymd x) {
  if (--x.d < 1) {
    if (--x.m < 1) {
      x.m = 12;
      --x.y;
    }
    x.d = month_len(x.y, x.m);
  }
  return x;
}

Ymd shift_years(Ymd x, int years) {
  x.y += years;
  if (x.m == 2 && x.d == 29 && !leap(x.y)) x.d = 28;
  return x;
}

Ymd to_ymd(Date d) {
  return {static_cast<int>(d.year()), static_cast<int>(static_cast<unsigned>(d.month())),
          static_cast<int>(static_cast<unsigned>(d.day()))};
}

Date from_ymd(Ymd x) {
  return Date{std::chrono::year{x.y}, std::chrono::month{static_cast<unsigned>(x.m)},
              std::chrono::day{static_cast<unsigned>(x.d)}};
}

struct OracleWindows {
  Ymd past_start, past_end, present_start, present_end, future_start, future_end;
};

OracleWindows oracle_windows(Ymd today) {
  OracleWindows w;
  w.present_end = today;
  w.present_start = next_day(shift_years(today, -1));
  w.past_start = shift_years(w.present_start, -10);
  w.past_end = prev_day(w.present_start);
  w.future_start = shift_years(next_day(today), 1);
  w.future_end = prev_day(shift_years(w.future_start, 1));
  return w;
}

TEST(PotToWackiness, Endpoints) {
  EXPECT_EQ(pot_to_wackiness(0).value(), 0.0);
  EXPECT_EQ(pot_to_wackiness(1023).value(), 1.0);
}

TEST(PotToWackiness, MidpointIsExactQuotient) {
  EXPECT_EQ(pot_to_wackiness(511).value(), 511.0 / 1023.0);
  EXPECT_NEAR(pot_to_wackiness(511).value(), 0.49951, 1e-5);
}

TEST(PotToWackiness, RejectsOutOfRange) {
  EXPECT_THROW(pot_to_wackiness(-1), OutOfRange);
  EXPECT_THROW(pot_to_wackiness(1024), OutOfRange);
}

TEST(PotToWackiness, MonotoneOverAllReadings) {
  for (int raw = 1; raw <= kPotMax; ++raw) {
    ASSERT_LT(pot_to_wackiness(raw - 1).value(), pot_to_wackiness(raw).value()) << raw;
  }
}

TEST(Wackiness, RejectsNaNAndOutside) {
  EXPECT_THROW(Wackiness{-0.01}, OutOfRange);
  EXPECT_THROW(Wackiness{1.01}, OutOfRange);
  EXPECT_THROW(Wackiness{std::nan("")}, OutOfRange);
}

TEST(WackinessToTemperature, Examples) {
  EXPECT_DOUBLE_EQ(wackiness_to_temperature(Wackiness{0.0}), 0.2);
  EXPECT_DOUBLE_EQ(wackiness_to_temperature(Wackiness{1.0}), 1.5);
  EXPECT_DOUBLE_EQ(wackiness_to_temperature(Wackiness{0.5}), 0.85);
}

TEST(WackinessToTemperature, StaysInRangeAndIncreases) {
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = wackiness_to_temperature(Wackiness{i / 1000.0});
    EXPECT_GE(t, kMinTemperature);
    EXPECT_LE(t, kMaxTemperature);
    EXPECT_GT(t, prev);
    prev = t;
  }
}

TEST(DateWindow, ExamplesForMayFourth) {
  const Date today = parse_date("2020-05-04");
  EXPECT_EQ(when_to_date_window(WhenSetting::Present, today),
            (DateWindow{parse_date("2019-05-05"), parse_date("2020-05-04")}));
  EXPECT_EQ(when_to_date_window(WhenSetting::Past, today),
            (DateWindow{parse_date("2009-05-05"), parse_date("2019-05-04")}));
  EXPECT_EQ(when_to_date_window(WhenSetting::Future, today),
            (DateWindow{parse_date("2021-05-05"), parse_date("2022-05-04")}));
}

TEST(DateWindow, LeapDayNeighbourhood) {
  // 2020-02-29 minus a year clamps to 2019-02-28, so Present starts 2019-03-01.
  const Date today = parse_date("2020-02-29");
  EXPECT_EQ(when_to_date_window(WhenSetting::Present, today).start, parse_date("2019-03-01"));
  EXPECT_EQ(when_to_date_window(WhenSetting::Future, today).start, parse_date("2021-03-01"));
  const Date eve = parse_date("2019-02-28");
  EXPECT_EQ(when_to_date_window(WhenSetting::Future, eve).start, parse_date("2020-03-01"));
  EXPECT_EQ(when_to_date_window(WhenSetting::Future, parse_date("2023-02-27")).start,
            parse_date("2024-02-28"));
  EXPECT_EQ(when_to_date_window(WhenSetting::Future, parse_date("2023-02-28")).start,
            parse_date("2024-03-01"));
}

TEST(DateWindow, MatchesCalendarOracleForEveryDayOfTwoDecades) {
  Ymd day{2000, 1, 1};
  for (int i = 0; i < 366 * 20; ++i, day = next_day(day)) {
    const Date today = from_ymd(day);
    const OracleWindows o = oracle_windows(day);
    const auto past = when_to_date_window(WhenSetting::Past, today);
    const auto present = when_to_date_window(WhenSetting::Present, today);
    const auto future = when_to_date_window(WhenSetting::Future, today);
    ASSERT_EQ(to_ymd(present.start), o.present_start) << format_date(today);
    ASSERT_EQ(to_ymd(present.end), o.present_end) << format_date(today);
    ASSERT_EQ(to_ymd(past.start), o.past_start) << format_date(today);
    ASSERT_EQ(to_ymd(past.end), o.past_end) << format_date(today);
    ASSERT_EQ(to_ymd(future.start), o.future_start) << format_date(today);
    ASSERT_EQ(to_ymd(future.end), o.future_end) << format_date(today);
  }
}

TEST(DateWindow, WindowInvariants) {
  Ymd day{1996, 1, 1};
  for (int i = 0; i < 366 * 12; ++i, day = next_day(day)) {
    const Date today = from_ymd(day);
    const auto past = when_to_date_window(WhenSetting::Past, today);
    const auto present = when_to_date_window(WhenSetting::Present, today);
    const auto future = when_to_date_window(WhenSetting::Future, today);
    ASSERT_EQ(add_days(past.end, 1), present.start);
    ASSERT_EQ(present.end, today);
    ASSERT_LT(present.end, future.start);
    // Clamping of Feb 29 can shorten or lengthen a window by one day.
    const int present_len = days_between(present.start, present.end) + 1;
    const int future_len = days_between(future.start, future.end) + 1;
    const int past_len = days_between(past.start, past.end) + 1;
    ASSERT_GE(present_len, 364);
    ASSERT_LE(present_len, 366);
    ASSERT_GE(future_len, 364);
    ASSERT_LE(future_len, 367);
    ASSERT_GE(past_len, 3651);
    ASSERT_LE(past_len, 3654);
  }
}

TEST(GenreOrder, SwitchOrderAndNames) {
  EXPECT_EQ(kAllGenres.size(), 12u);
  EXPECT_EQ(kAllGenres.front(), Genre::Politics);
  EXPECT_EQ(kAllGenres.back(), Genre::Random);
  EXPECT_EQ(genre_slug(Genre::ConspiracyTheory), "conspiracy-theory");
  EXPECT_EQ(genre_identifier(Genre::ChiTweets), "ChiTweets");
  for (Genre g : kAllGenres) {
    EXPECT_EQ(genre_from_name(genre_slug(g)), g);
    EXPECT_EQ(genre_from_name(genre_identifier(g)), g);
  }
  EXPECT_EQ(genre_from_name("FOX-SPORTS"), Genre::FoxSports);
  EXPECT_FALSE(genre_from_name("weather"));
  EXPECT_EQ(when_from_name("Future"), WhenSetting::Future);
  EXPECT_FALSE(when_from_name("someday"));
}

TEST(GenreMap, DefaultsCoverEveryConcreteGenre) {
  const GenreMap map = GenreMap::defaults();
  for (Genre g : kConcreteGenres) {
    EXPECT_TRUE(map.contains(g)) << genre_slug(g);
    EXPECT_EQ(map.genre_for_code(map.at(g).code_token), g);
  }
  EXPECT_FALSE(map.contains(Genre::Random));
}

TEST(GenreMap, ShippedFileEqualsDefaults) {
  const GenreMap shipped = GenreMap::load(testing::data_dir() / "genres.conf");
  const GenreMap defaults = GenreMap::defaults();
  for (Genre g : kConcreteGenres) EXPECT_EQ(shipped.at(g), defaults.at(g)) << genre_slug(g);
}

TEST(GenreMap, ParseAndRoundTrip) {
  const GenreMap map = GenreMap::parse(
      "# comment\n\nPolitics = Pol , news.example.org\nfox-sports = Sport , sport.example.org\n");
  EXPECT_EQ(map.at(Genre::Politics), (GenreCodes{"Pol", "news.example.org"}));
  EXPECT_EQ(map.at(Genre::FoxSports).code_token, "Sport");
  EXPECT_THROW(map.at(Genre::ScienceNews), ConfigMissing);
  const GenreMap again = GenreMap::parse(map.to_text());
  EXPECT_EQ(again.at(Genre::Politics), map.at(Genre::Politics));
  EXPECT_EQ(again.at(Genre::FoxSports), map.at(Genre::FoxSports));
}

TEST(GenreMap, ParseErrors) {
  EXPECT_THROW(GenreMap::parse("Politics Pol, a.org\n"), ConfigError);
  EXPECT_THROW(GenreMap::parse("Weather = W , a.org\n"), ConfigError);
  EXPECT_THROW(GenreMap::parse("Politics = , a.org\n"), ConfigError);
  EXPECT_THROW(GenreMap::parse("Politics = P , a.org\nPolitics = Q , b.org\n"), ConfigError);
  EXPECT_THROW(GenreMap::parse("Politics = P , a.org\nFoxSports = P , b.org\n"), ConfigError);
  EXPECT_THROW(GenreMap::parse("Politics = P , a.org/x\n"), ConfigError);
  EXPECT_THROW(GenreMap::load("/nonexistent/genres.conf"), ConfigError);
}

TEST(LinksCode, FormatAndParse) {
  const Date d = parse_date("2019-07-01");
  const std::string code = make_links_code("www.politico.com", d);
  EXPECT_EQ(code, "Links https://www.politico.com/2019/07/01/");
  const auto parsed = parse_links_code(code);
  ASSERT_TRUE(parsed);
  EXPECT_EQ(parsed->domain, "www.politico.com");
  EXPECT_EQ(parsed->date, d);
  EXPECT_FALSE(parse_links_code("Links http://x/2019/07/01/"));
  EXPECT_FALSE(parse_links_code("Links https://x/2019/13/01/"));
  EXPECT_FALSE(parse_links_code("https://x/2019/07/01/"));
}

TEST(ControlSpec, PoliticsPresentExample) {
  Rng rng{1};
  const GenreMap genres = GenreMap::defaults();
  const MillSettings s{Wackiness{0.0}, Genre::Politics, WhenSetting::Present};
  const ControlSpec spec = build_control_spec(s, parse_date("2020-05-04"), rng, genres);
  EXPECT_DOUBLE_EQ(spec.temperature, 0.2);
  EXPECT_EQ(spec.effective_genre, Genre::Politics);
  EXPECT_EQ(spec.genre_code, "Politics");
  const DateWindow window{parse_date("2019-05-05"), parse_date("2020-05-04")};
  EXPECT_TRUE(window.contains(spec.target_date));
  EXPECT_TRUE(std::regex_match(spec.links_code,
                               std::regex(R"(Links https://[^/]+/(2019|2020)/\d\d/\d\d/)")));
  EXPECT_EQ(spec.links_code, make_links_code("www.politico.com", spec.target_date));
}

TEST(ControlSpec, NonRandomGenreIsIdentity) {
  const GenreMap genres = GenreMap::defaults();
  Rng rng{3};
  for (Genre g : kConcreteGenres) {
    for (WhenSetting w : kAllWhens) {
      const auto spec =
          build_control_spec({Wackiness{0.3}, g, w}, parse_date("2021-01-31"), rng, genres);
      EXPECT_EQ(spec.effective_genre, g);
      EXPECT_EQ(spec.genre_code, genres.at(g).code_token);
      EXPECT_TRUE(when_to_date_window(w, parse_date("2021-01-31")).contains(spec.target_date));
    }
  }
}

TEST(ControlSpec, RandomIsDeterministicPerSeedAndCoversGenres) {
  const GenreMap genres = GenreMap::defaults();
  const MillSettings s{Wackiness{0.7}, Genre::Random, WhenSetting::Future};
  std::set<Genre> seen;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    Rng a{seed}, b{seed};
    const auto x = build_control_spec(s, parse_date("2020-05-04"), a, genres);
    const auto y = build_control_spec(s, parse_date("2020-05-04"), b, genres);
    EXPECT_EQ(x, y);
    EXPECT_NE(x.effective_genre, Genre::Random);
    seen.insert(x.effective_genre);
  }
  EXPECT_EQ(seen.size(), kConcreteGenreCount);
}

TEST(ControlSpec, MissingGenreMapEntry) {
  GenreMap genres = GenreMap::defaults();
  genres.erase(Genre::FoxSports);
  Rng rng{1};
  EXPECT_THROW(build_control_spec({Wackiness{0.1}, Genre::FoxSports, WhenSetting::Past},
                                  parse_date("2020-05-04"), rng, genres),
               ConfigMissing);
}

}  // namespace
}  // namespace rumour_mill
