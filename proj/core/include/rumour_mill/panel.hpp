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

#include <chrono>
#include <optional>
#include <string_view>

#include "rumour_mill/clock.hpp"
#include "rumour_mill/params.hpp"

namespace rumour_mill {

inline constexpr double kCrankTriggerDegrees = 360.0;
inline constexpr int kMaxCrankDelta = 360;
inline constexpr std::chrono::milliseconds kCrankInactivity{5000};
inline constexpr std::chrono::milliseconds kSwitchDebounce{30};

enum class EventKind { Pot, Switch, Toggle, Crank };

std::string_view event_kind_name(EventKind kind);  // "pot" | "switch" | "toggle" | "crank"
std::optional<EventKind> event_kind_from_name(std::string_view name);

// Digitized control change. value is the pot reading (0..1023), switch
// position (1..12), toggle index (0 past, 1 present, 2 future) or a signed
// crank delta in degrees (-360..360).
struct InputEvent {
  EventKind kind = EventKind::Pot;
  int value = 0;
  Timestamp at;
};

struct PanelState {
  int pot_raw = 0;
  int switch_pos = 1;
  WhenSetting toggle_pos = WhenSetting::Present;
  double crank_accum_deg = 0.0;
  Timestamp last_crank_event{};
  std::optional<Timestamp> last_switch_event;

  friend bool operator==(const PanelState&, const PanelState&) = default;
};

// Throws InvalidEvent.
void validate_event(const InputEvent& event);

struct ApplyResult {
  PanelState state;
  bool trigger = false;
};

// Crank deltas accumulate (negatives count as zero) while consecutive crank
// events are at most kCrankInactivity apart; otherwise accumulation
// restarts. Reaching kCrankTriggerDegrees triggers and resets to zero.
// Switch events within kSwitchDebounce of the previous switch event are
// ignored. Throws InvalidEvent.
ApplyResult apply_event(const PanelState& state, const InputEvent& event);

// The accumulator as seen at `now`: zero once the crank has been idle for
// longer than kCrankInactivity.
double effective_crank_deg(const PanelState& state, Timestamp now);

Genre genre_at_switch(int switch_pos);
MillSettings current_settings(const PanelState& state);

}  // namespace rumour_mill
