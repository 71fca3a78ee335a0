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

#include <cstddef>
#include <span>
#include <vector>

#include "rumour_mill/rng.hpp"

namespace rumour_mill {

// Below this temperature sampling is treated as its T -> 0 limit: the
// argmax, lowest index on ties.
inline constexpr double kGreedyTemperature = 1e-3;

// p_i = w_i^(1/T) / sum_j w_j^(1/T), evaluated in log space so that small T
// does not overflow. Throws EmptyWeights, NonPositiveWeight,
// NonPositiveTemperature.
std::vector<double> temperature_distribution(std::span<const double> weights, double temperature);

// Draws one index from temperature_distribution(weights, temperature).
std::size_t temperature_sample(std::span<const double> weights, double temperature, Rng& rng);

}  // namespace rumour_mill
