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

// Control-panel parameters and their translation into generation
// conditioning: wackiness -> sampling temperature, genre -> control codes,
// time period -> dated Links code.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "rumour_mill/clock.hpp"
#include "rumour_mill/rng.hpp"

namespace rumour_mill {

// Order matches the positions of the 12-step switch; Random sits at 12.
enum class Genre : std::uint8_t {
  Politics,
  ConspiracyTheory,
  ScienceNews,
  CnnBusiness,
  EntertainmentTonight,
  DailyMailHealth,
  FoxSports,
  IndependentWorldNews,
  CelebrityGossip,
  ChiTweets,
  RussiaToday,
  Random,
};

inline constexpr std::size_t kGenreCount = 12;
inline constexpr std::size_t kConcreteGenreCount = 11;

inline constexpr std::array<Genre, kGenreCount> kAllGenres = {
    Genre::Politics,        Genre::ConspiracyTheory,     Genre::ScienceNews,
    Genre::CnnBusiness,     Genre::EntertainmentTonight, Genre::DailyMailHealth,
    Genre::FoxSports,       Genre::IndependentWorldNews, Genre::CelebrityGossip,
    Genre::ChiTweets,       Genre::RussiaToday,          Genre::Random,
};

inline constexpr std::array<Genre, kConcreteGenreCount> kConcreteGenres = {
    Genre::Politics,        Genre::ConspiracyTheory,     Genre::ScienceNews,
    Genre::CnnBusiness,     Genre::EntertainmentTonight, Genre::DailyMailHealth,
    Genre::FoxSports,       Genre::IndependentWorldNews, Genre::CelebrityGossip,
    Genre::ChiTweets,       Genre::RussiaToday,
};

constexpr std::size_t genre_index(Genre g) { return static_cast<std::size_t>(g); }

// CamelCase identifier, e.g. "ConspiracyTheory". Used in config files.
std::string_view genre_identifier(Genre g);
// Lowercase hyphenated slug, e.g. "conspiracy-theory". Used on tickets,
// on the wire and in data file names.
std::string_view genre_slug(Genre g);
// Accepts identifier or slug, case-insensitively.
std::optional<Genre> genre_from_name(std::string_view name);

enum class WhenSetting : std::uint8_t { Past, Present, Future };

inline constexpr std::array<WhenSetting, 3> kAllWhens = {WhenSetting::Past, WhenSetting::Present,
                                                         WhenSetting::Future};

constexpr std::size_t when_index(WhenSetting w) { return static_cast<std::size_t>(w); }
std::string_view when_name(WhenSetting w);  // "past" | "present" | "future"
std::optional<WhenSetting> when_from_name(std::string_view name);

// How wacky the story should be, in [0, 1].
class Wackiness {
 public:
  // Throws OutOfRange outside [0, 1] (NaN included).
  explicit Wackiness(double value);

  double value() const noexcept { return value_; }
  friend bool operator==(Wackiness, Wackiness) = default;

 private:
  double value_;
};

struct MillSettings {
  Wackiness wackiness{0.0};
  Genre genre = Genre::Politics;
  WhenSetting when = WhenSetting::Present;

  friend bool operator==(const MillSettings&, const MillSettings&) = default;
};

// Inclusive on both ends.
struct DateWindow {
  Date start;
  Date end;

  bool contains(Date d) const { return start <= d && d <= end; }
  friend bool operator==(const DateWindow&, const DateWindow&) = default;
};

struct ControlSpec {
  double temperature = 1.0;
  std::string genre_code;
  std::string links_code;
  Date target_date;
  Genre effective_genre = Genre::Politics;

  friend bool operator==(const ControlSpec&, const ControlSpec&) = default;
};

inline constexpr double kMinTemperature = 0.2;
inline constexpr double kMaxTemperature = 1.5;
inline constexpr int kPotMax = 1023;

// 10-bit potentiometer reading to wackiness. Throws OutOfRange.
Wackiness pot_to_wackiness(int raw);

// Affine map onto [kMinTemperature, kMaxTemperature].
double wackiness_to_temperature(Wackiness w);

DateWindow when_to_date_window(WhenSetting when, Date today);

struct GenreCodes {
  std::string code_token;
  std::string links_domain;

  friend bool operator==(const GenreCodes&, const GenreCodes&) = default;
};

// Genre -> (control-code token, Links domain). Text form, one entry per line:
//
//   # comment
//   Politics = Politics , www.politico.com
class GenreMap {
 public:
  GenreMap() = default;

  static GenreMap defaults();
  // Throws ConfigError on syntax errors or unknown genre names.
  static GenreMap parse(std::string_view text);
  static GenreMap load(const std::filesystem::path& path);

  // Throws ConfigMissing.
  const GenreCodes& at(Genre g) const;
  bool contains(Genre g) const { return entries_.count(g) != 0; }
  void set(Genre g, GenreCodes codes) { entries_[g] = std::move(codes); }
  void erase(Genre g) { entries_.erase(g); }

  // Reverse lookup of a code token.
  std::optional<Genre> genre_for_code(std::string_view code_token) const;

  std::string to_text() const;

 private:
  std::map<Genre, GenreCodes> entries_;
};

// "Links https://<domain>/YYYY/MM/DD/"
std::string make_links_code(std::string_view domain, Date date);

struct LinksCode {
  std::string domain;
  Date date;
};
std::optional<LinksCode> parse_links_code(std::string_view links_code);

// Random resolves here by a uniform draw over the 11 concrete genres, and
// the target date is drawn uniformly from the window. Throws ConfigMissing.
ControlSpec build_control_spec(const MillSettings& settings, Date today, Rng& rng,
                               const GenreMap& genres);

}  // namespace rumour_mill
