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

#include "rumour_mill/rumour.hpp"

#include <fmt/format.h>

#include <json.hpp>

#include "rumour_mill/errors.hpp"

namespace rumour_mill {

using nlohmann::json;

std::string_view provenance_name(Provenance p) { return p == Provenance::Live ? "live" : "cache"; }

std::string serialize_rumour(const Rumour& r) {
  const json j = {
      {"id", r.id},
      {"headline", r.headline},
      {"body", r.body},
      {"settings",
       {{"wackiness", r.settings.wackiness.value()},
        {"genre", genre_slug(r.settings.genre)},
        {"when", when_name(r.settings.when)}}},
      {"spec",
       {{"temperature", r.spec.temperature},
        {"genre_code", r.spec.genre_code},
        {"links_code", r.spec.links_code},
        {"target_date", format_date(r.spec.target_date)},
        {"effective_genre", genre_slug(r.spec.effective_genre)}}},
      {"created_at", format_timestamp(r.created_at)},
      {"provenance", provenance_name(r.provenance)},
  };
  return j.dump();
}

Rumour deserialize_rumour(std::string_view text) {
  try {
    const json j = json::parse(text);
    auto genre = [](const json& v) {
      const auto g = genre_from_name(v.get<std::string>());
      if (!g) throw JournalError(fmt::format("unknown genre '{}'", v.get<std::string>()));
      return *g;
    };
    Rumour r;
    r.id = j.at("id").get<std::string>();
    r.headline = j.at("headline").get<std::string>();
    r.body = j.at("body").get<std::string>();

    const json& s = j.at("settings");
    r.settings.wackiness = Wackiness{s.at("wackiness").get<double>()};
    r.settings.genre = genre(s.at("genre"));
    const auto when = when_from_name(s.at("when").get<std::string>());
    if (!when) throw JournalError("unknown when setting");
    r.settings.when = *when;

    const json& c = j.at("spec");
    r.spec.temperature = c.at("temperature").get<double>();
    r.spec.genre_code = c.at("genre_code").get<std::string>();
    r.spec.links_code = c.at("links_code").get<std::string>();
    r.spec.target_date = parse_date(c.at("target_date").get<std::string>());
    r.spec.effective_genre = genre(c.at("effective_genre"));

    r.created_at = parse_timestamp(j.at("created_at").get<std::string>());
    const std::string prov = j.at("provenance").get<std::string>();
    if (prov != "live" && prov != "cache") throw JournalError("unknown provenance");
    r.provenance = prov == "live" ? Provenance::Live : Provenance::Cache;
    if (r.id.empty() || r.headline.empty() || r.body.empty()) {
      throw JournalError("rumour with empty id, headline or body");
    }
    return r;
  } catch (const json::exception& e) {
    throw JournalError(fmt::format("malformed rumour record: {}", e.what()));
  } catch (const OutOfRange& e) {
    throw JournalError(fmt::format("malformed rumour record: {}", e.what()));
  }
}

}  // namespace rumour_mill
