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

#include <string>
#include <string_view>

#include "rumour_mill/clock.hpp"
#include "rumour_mill/params.hpp"

namespace rumour_mill {

enum class Provenance { Live, Cache };

std::string_view provenance_name(Provenance p);  // "live" | "cache"

// One milling's output: headline and news blurb plus everything needed to
// print the settings echo.
struct Rumour {
  std::string id;
  std::string headline;
  std::string body;
  MillSettings settings;
  ControlSpec spec;
  Timestamp created_at;
  Provenance provenance = Provenance::Live;

  friend bool operator==(const Rumour&, const Rumour&) = default;
};

// Compact JSON form used by the cache journal.
std::string serialize_rumour(const Rumour& rumour);
// Throws JournalError on malformed input.
Rumour deserialize_rumour(std::string_view json);

}  // namespace rumour_mill
