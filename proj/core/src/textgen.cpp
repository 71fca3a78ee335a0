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

#include <fmt/format.h>

#include "rumour_mill/errors.hpp"

namespace rumour_mill {

namespace {

Rumour generate_with_spec(const MillSettings& settings, const ControlSpec& spec,
                          GenerationBackend& backend, const Clock& clock, Rng& rng,
                          const GenerationOptions& options, std::string id) {
  Rumour rumour;
  rumour.id = std::move(id);
  rumour.settings = settings;
  rumour.spec = spec;
  rumour.headline = backend.generate_headline(spec.temperature, spec.effective_genre, rng);
  if (rumour.headline.empty()) throw ProtocolError("backend produced an empty headline");
  rumour.body = backend.generate_story(story_seed(rumour.headline), spec, rng, options.max_tokens);
  if (rumour.body.empty()) throw ProtocolError("backend produced an empty story");
  rumour.created_at = clock.now();
  rumour.provenance = Provenance::Live;
  return rumour;
}

}  // namespace

std::string story_seed(std::string_view headline) {
  std::string seed{headline};
  if (!seed.empty() && seed.back() != '.' && seed.back() != '!' && seed.back() != '?') {
    seed += '.';
  }
  return seed;
}

std::string make_rumour_id(Rng& rng) { return fmt::format("{:016x}", rng.next_u64()); }

Rumour generate_rumour(const MillSettings& settings, GenerationBackend& backend,
                       const GenreMap& genres, const Clock& clock, Rng& rng,
                       const GenerationOptions& options) {
  std::string id = make_rumour_id(rng);
  const ControlSpec spec = build_control_spec(settings, to_date(clock.now()), rng, genres);
  return generate_with_spec(settings, spec, backend, clock, rng, options, std::move(id));
}

Rumour mill_once(const MillSettings& settings, GenerationBackend& backend, CacheStore& cache,
                 const GenreMap& genres, const Clock& clock, Rng& rng,
                 const GenerationOptions& options) {
  std::string id = make_rumour_id(rng);
  const ControlSpec spec = build_control_spec(settings, to_date(clock.now()), rng, genres);
  const CacheKey key = cache_key(settings, spec.effective_genre);
  std::string failure;
  try {
    Rumour rumour = generate_with_spec(settings, spec, backend, clock, rng, options, std::move(id));
    cache.put(key, rumour);
    return rumour;
  } catch (const BackendError& e) {
    failure = e.what();
  }
  if (auto cached = cache.take(key)) {
    // Echo the visitor's settings; the control fields keep what the story was generated with.
    cached->settings = settings;
    return std::move(*cached);
  }
  throw NoRumourAvailable(
      fmt::format("backend failed ({}) and the cache is empty for {}", failure, key.to_string()));
}

}  // namespace rumour_mill
