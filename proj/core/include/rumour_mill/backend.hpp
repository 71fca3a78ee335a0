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

#include "rumour_mill/params.hpp"
#include "rumour_mill/rng.hpp"

namespace rumour_mill {

// Two-stage generation contract: a headline stage whose output seeds a
// style-conditioned story stage. Implementations must be deterministic
// given identical inputs and rng state, and safe for concurrent calls.
// Failures are reported as BackendError.
class GenerationBackend {
 public:
  virtual ~GenerationBackend() = default;

  virtual std::string generate_headline(double temperature, Genre effective_genre, Rng& rng) = 0;

  // `seed_text` is the headline as handed to the story stage. The result is
  // the continuation only and is non-empty whenever max_tokens >= 1.
  virtual std::string generate_story(std::string_view seed_text, const ControlSpec& spec, Rng& rng,
                                     int max_tokens) = 0;
};

}  // namespace rumour_mill
