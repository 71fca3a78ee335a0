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

#include "rumour_mill/backend.hpp"
#include "rumour_mill/cache.hpp"
#include "rumour_mill/clock.hpp"
#include "rumour_mill/params.hpp"
#include "rumour_mill/rng.hpp"
#include "rumour_mill/rumour.hpp"

namespace rumour_mill {

struct GenerationOptions {
  int max_tokens = 120;
};

// Headline as handed to the story stage: verbatim, with a trailing period
// appended when it has no terminal punctuation.
std::string story_seed(std::string_view headline);

// 16 lowercase hex digits drawn from `rng`.
std::string make_rumour_id(Rng& rng);

// One live two-stage generation. Throws BackendError (or ConfigMissing).
Rumour generate_rumour(const MillSettings& settings, GenerationBackend& backend,
                       const GenreMap& genres, const Clock& clock, Rng& rng,
                       const GenerationOptions& options = {});

// generate_rumour, depositing a copy in `cache` on success. When the backend
// fails the rumour comes from the cache instead (provenance Cache). Throws
// NoRumourAvailable when both fail.
Rumour mill_once(const MillSettings& settings, GenerationBackend& backend, CacheStore& cache,
                 const GenreMap& genres, const Clock& clock, Rng& rng,
                 const GenerationOptions& options = {});

}  // namespace rumour_mill
