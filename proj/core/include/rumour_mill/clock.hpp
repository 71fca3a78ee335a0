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

#include <atomic>
#include <chrono>
#include <string>
#include <string_view>

namespace rumour_mill {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

// Naive calendar date; no time zone is attached.
using Date = std::chrono::year_month_day;

class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp now() const = 0;
};

class SystemClock final : public Clock {
 public:
  Timestamp now() const override;
};

// Settable clock for tests and reproducible CLI runs.
class ManualClock final : public Clock {
 public:
  explicit ManualClock(Timestamp start = Timestamp{}) : now_ms_(start.time_since_epoch().count()) {}

  Timestamp now() const override {
    return Timestamp{std::chrono::milliseconds{now_ms_.load()}};
  }
  void set(Timestamp t) { now_ms_.store(t.time_since_epoch().count()); }
  void advance(std::chrono::milliseconds d) { now_ms_.fetch_add(d.count()); }

 private:
  std::atomic<std::chrono::milliseconds::rep> now_ms_;
};

Date to_date(Timestamp t);

Date add_days(Date d, int days);

// Same month/day `years` later (or earlier when negative). Feb 29 clamps
// to Feb 28 when the target year is not a leap year.
Date add_years(Date d, int years);

// Days from a to b (b - a).
int days_between(Date a, Date b);

// "YYYY-MM-DD"
std::string format_date(Date d);
Date parse_date(std::string_view text);

// "YYYY-MM-DDTHH:MM:SSZ", or with ".mmm" when the milliseconds are non-zero.
std::string format_timestamp(Timestamp t);
Timestamp parse_timestamp(std::string_view text);

}  // namespace rumour_mill
