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

#include "rumour_mill/clock.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>

#include "rumour_mill/errors.hpp"

namespace rumour_mill {

namespace {

using std::chrono::days;
using std::chrono::sys_days;

// Parses exactly `width` digits at `pos`.
bool read_fixed(std::string_view text, std::size_t pos, std::size_t width, int& out) {
  if (pos + width > text.size()) return false;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + pos + width, out);
  return ec == std::errc{};
}

}  // namespace

Timestamp SystemClock::now() const {
  return std::chrono::floor<std::chrono::milliseconds>(std::chrono::system_clock::now());
}

Date to_date(Timestamp t) { return Date{std::chrono::floor<days>(t)}; }

Date add_days(Date d, int n) { return Date{sys_days{d} + days{n}}; }

Date add_years(Date d, int years) {
  Date shifted{d.year() + std::chrono::years{years}, d.month(), d.day()};
  if (!shifted.ok()) {
    shifted = Date{std::chrono::year_month_day_last{shifted.year(),
                                                    std::chrono::month_day_last{d.month()}}};
  }
  return shifted;
}

int days_between(Date a, Date b) {
  return static_cast<int>((sys_days{b} - sys_days{a}).count());
}

std::string format_date(Date d) {
  return fmt::format("{:04}-{:02}-{:02}", static_cast<int>(d.year()),
                     static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
}

Date parse_date(std::string_view text) {
  int y = 0, m = 0, d = 0;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !read_fixed(text, 0, 4, y) ||
      !read_fixed(text, 5, 2, m) || !read_fixed(text, 8, 2, d)) {
    throw OutOfRange(fmt::format("not a YYYY-MM-DD date: '{}'", text));
  }
  Date date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
            std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok()) throw OutOfRange(fmt::format("invalid calendar date: '{}'", text));
  return date;
}

std::string format_timestamp(Timestamp t) {
  const auto day = std::chrono::floor<days>(t);
  const std::chrono::hh_mm_ss tod{t - day};
  const std::string date = format_date(Date{day});
  const auto ms = tod.subseconds().count();
  if (ms != 0) {
    return fmt::format("{}T{:02}:{:02}:{:02}.{:03}Z", date, tod.hours().count(),
                       tod.minutes().count(), tod.seconds().count(), ms);
  }
  return fmt::format("{}T{:02}:{:02}:{:02}Z", date, tod.hours().count(), tod.minutes().count(),
                     tod.seconds().count());
}

Timestamp parse_timestamp(std::string_view text) {
  auto fail = [&] { return OutOfRange(fmt::format("not an ISO-8601 UTC timestamp: '{}'", text)); };
  if (text.size() < 20 || text[10] != 'T' || text.back() != 'Z') throw fail();
  const Date date = parse_date(text.substr(0, 10));
  int h = 0, mi = 0, s = 0, ms = 0;
  if (text[13] != ':' || text[16] != ':' || !read_fixed(text, 11, 2, h) ||
      !read_fixed(text, 14, 2, mi) || !read_fixed(text, 17, 2, s)) {
    throw fail();
  }
  if (text.size() == 24) {
    if (text[19] != '.' || !read_fixed(text, 20, 3, ms)) throw fail();
  } else if (text.size() != 20) {
    throw fail();
  }
  if (h > 23 || mi > 59 || s > 60) throw fail();
  return Timestamp{sys_days{date}} + std::chrono::hours{h} + std::chrono::minutes{mi} +
         std::chrono::seconds{s} + std::chrono::milliseconds{ms};
}

}  // namespace rumour_mill
