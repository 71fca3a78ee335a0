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

#include "rumour_mill/sampler.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "rumour_mill/errors.hpp"

namespace rumour_mill {

namespace {

void validate(std::span<const double> weights, double temperature) {
  if (weights.empty()) throw EmptyWeights("temperature sampling needs at least one weight");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw NonPositiveWeight(fmt::format("weight[{}] = {} is not a positive number", i, weights[i]));
    }
  }
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw NonPositiveTemperature(fmt::format("temperature {} is not positive", temperature));
  }
}

}  // namespace

std::vector<double> temperature_distribution(std::span<const double> weights, double temperature) {
  validate(weights, temperature);
  std::vector<double> p(weights.size(), 0.0);
  if (temperature < kGreedyTemperature) {
    // max_element returns the first maximum.
    p[static_cast<std::size_t>(std::max_element(weights.begin(), weights.end()) - weights.begin())] = 1.0;
    return p;
  }

  double max_log = -INFINITY;
  for (double w : weights) max_log = std::max(max_log, std::log(w));
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    p[i] = std::exp((std::log(weights[i]) - max_log) / temperature);
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

std::size_t temperature_sample(std::span<const double> weights, double temperature, Rng& rng) {
  const std::vector<double> p = temperature_distribution(weights, temperature);
  const double u = rng.uniform01();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    cumulative += p[i];
    last_positive = i;
    if (u < cumulative) return i;
  }
  // Rounding left the cumulative sum a hair below u.
  return last_positive;
}

}  // namespace rumour_mill
