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

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "rumour_mill/errors.hpp"

namespace rumour_mill {

namespace {

struct GenreNames {
  std::string_view identifier;
  std::string_view slug;
};

constexpr std::array<GenreNames, kGenreCount> kGenreNames = {{
    {"Politics", "politics"},
    {"ConspiracyTheory", "conspiracy-theory"},
    {"ScienceNews", "science-news"},
    {"CnnBusiness", "cnn-business"},
    {"EntertainmentTonight", "entertainment-tonight"},
    {"DailyMailHealth", "daily-mail-health"},
    {"FoxSports", "fox-sports"},
    {"IndependentWorldNews", "independent-world-news"},
    {"CelebrityGossip", "celebrity-gossip"},
    {"ChiTweets", "chi-tweets"},
    {"RussiaToday", "russia-today"},
    {"Random", "random"},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool has_space_or_slash(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return c == '/' || std::isspace(static_cast<unsigned char>(c));
  });
}

constexpr std::string_view kLinksPrefix = "Links https://";

}  // namespace

std::string_view genre_identifier(Genre g) { return kGenreNames.at(genre_index(g)).identifier; }

std::string_view genre_slug(Genre g) { return kGenreNames.at(genre_index(g)).slug; }

std::optional<Genre> genre_from_name(std::string_view name) {
  name = trim(name);
  for (Genre g : kAllGenres) {
    if (iequals(name, genre_identifier(g)) || iequals(name, genre_slug(g))) return g;
  }
  return std::nullopt;
}

std::string_view when_name(WhenSetting w) {
  switch (w) {
    case WhenSetting::Past:
      return "past";
    case WhenSetting::Present:
      return "present";
    case WhenSetting::Future:
      return "future";
  }
  return "present";
}

std::optional<WhenSetting> when_from_name(std::string_view name) {
  for (WhenSetting w : kAllWhens) {
    if (iequals(trim(name), when_name(w))) return w;
  }
  return std::nullopt;
}

Wackiness::Wackiness(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw OutOfRange(fmt::format("wackiness {} outside [0, 1]", value));
  }
}

Wackiness pot_to_wackiness(int raw) {
  if (raw < 0 || raw > kPotMax) {
    throw OutOfRange(fmt::format("potentiometer reading {} outside 0..{}", raw, kPotMax));
  }
  return Wackiness{static_cast<double>(raw) / kPotMax};
}

double wackiness_to_temperature(Wackiness w) {
  return kMinTemperature + w.value() * (kMaxTemperature - kMinTemperature);
}

DateWindow when_to_date_window(WhenSetting when, Date today) {
  const DateWindow present{add_days(add_years(today, -1), 1), today};
  switch (when) {
    case WhenSetting::Present:
      return present;
    case WhenSetting::Past:
      return {add_years(present.start, -10), add_days(present.start, -1)};
    case WhenSetting::Future: {
      const Date start = add_years(add_days(today, 1), 1);
      return {start, add_days(add_years(start, 1), -1)};
    }
  }
  return present;
}

GenreMap GenreMap::defaults() {
  GenreMap map;
  map.set(Genre::Politics, {"Politics", "www.politico.com"});
  map.set(Genre::ConspiracyTheory, {"Conspiracy", "www.reddit.com"});
  map.set(Genre::ScienceNews, {"Science", "www.sciencedaily.com"});
  map.set(Genre::CnnBusiness, {"Business", "edition.cnn.com"});
  map.set(Genre::EntertainmentTonight, {"Entertainment", "www.etonline.com"});
  map.set(Genre::DailyMailHealth, {"Health", "www.dailymail.co.uk"});
  map.set(Genre::FoxSports, {"Sports", "www.foxsports.com"});
  map.set(Genre::IndependentWorldNews, {"World", "www.independent.co.uk"});
  map.set(Genre::CelebrityGossip, {"Gossip", "www.tmz.com"});
  map.set(Genre::ChiTweets, {"Twitter", "twitter.com"});
  map.set(Genre::RussiaToday, {"RussiaToday", "www.rt.com"});
  return map;
}

GenreMap GenreMap::parse(std::string_view text) {
  GenreMap map;
  std::set<std::string> codes;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    auto fail = [&](std::string_view why) {
      return ConfigError(fmt::format("genre map line {}: {}", line_no, why));
    };
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw fail("expected '<Genre> = <code> , <domain>'");
    const std::string_view name = trim(line.substr(0, eq));
    const std::string_view rest = line.substr(eq + 1);
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw fail("expected ',' between code and domain");
    const std::string_view code = trim(rest.substr(0, comma));
    const std::string_view domain = trim(rest.substr(comma + 1));

    const auto genre = genre_from_name(name);
    if (!genre) throw fail(fmt::format("unknown genre '{}'", name));
    if (code.empty() || domain.empty()) throw fail("empty code token or domain");
    if (has_space_or_slash(domain)) throw fail(fmt::format("bad links domain '{}'", domain));
    if (map.contains(*genre)) throw fail(fmt::format("duplicate genre '{}'", name));
    if (!codes.emplace(code).second) throw fail(fmt::format("duplicate code token '{}'", code));
    map.set(*genre, {std::string{code}, std::string{domain}});
  }
  return map;
}

GenreMap GenreMap::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open genre map '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const GenreCodes& GenreMap::at(Genre g) const {
  const auto it = entries_.find(g);
  if (it == entries_.end()) {
    throw ConfigMissing(fmt::format("no control codes configured for genre {}", genre_identifier(g)));
  }
  return it->second;
}

std::optional<Genre> GenreMap::genre_for_code(std::string_view code_token) const {
  for (const auto& [genre, codes] : entries_) {
    if (codes.code_token == code_token) return genre;
  }
  return std::nullopt;
}

std::string GenreMap::to_text() const {
  std::string out;
  for (const auto& [genre, codes] : entries_) {
    out += fmt::format("{} = {} , {}\n", genre_identifier(genre), codes.code_token,
                       codes.links_domain);
  }
  return out;
}

std::string make_links_code(std::string_view domain, Date date) {
  return fmt::format("{}{}/{:04}/{:02}/{:02}/", kLinksPrefix, domain,
                     static_cast<int>(date.year()), static_cast<unsigned>(date.month()),
                     static_cast<unsigned>(date.day()));
}

std::optional<LinksCode> parse_links_code(std::string_view links_code) {
  if (!links_code.starts_with(kLinksPrefix)) return std::nullopt;
  std::string_view rest = links_code.substr(kLinksPrefix.size());
  const auto slash = rest.find('/');
  if (slash == std::string_view::npos || slash == 0) return std::nullopt;
  const std::string_view domain = rest.substr(0, slash);
  if (has_space_or_slash(domain)) return std::nullopt;
  rest = rest.substr(slash + 1);
  // YYYY/MM/DD/
  if (rest.size() != 11 || rest[4] != '/' || rest[7] != '/' || rest[10] != '/') {
    return std::nullopt;
  }
  const std::string iso = fmt::format("{}-{}-{}", rest.substr(0, 4), rest.substr(5, 2),
                                      rest.substr(8, 2));
  try {
    return LinksCode{std::string{domain}, parse_date(iso)};
  } catch (const OutOfRange&) {
    return std::nullopt;
  }
}

ControlSpec build_control_spec(const MillSettings& settings, Date today, Rng& rng,
                               const GenreMap& genres) {
  ControlSpec spec;
  spec.temperature = wackiness_to_temperature(settings.wackiness);
  spec.effective_genre = settings.genre == Genre::Random
                             ? kConcreteGenres[rng.uniform_index(kConcreteGenres.size())]
                             : settings.genre;

  const DateWindow window = when_to_date_window(settings.when, today);
  const auto span = static_cast<std::size_t>(days_between(window.start, window.end)) + 1;
  spec.target_date = add_days(window.start, static_cast<int>(rng.uniform_index(span)));

  const GenreCodes& codes = genres.at(spec.effective_genre);
  spec.genre_code = codes.code_token;
  spec.links_code = make_links_code(codes.links_domain, spec.target_date);
  return spec;
}

}  // namespace rumour_mill
