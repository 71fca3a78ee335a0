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

#include "rumour_mill/panel.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "rumour_mill/errors.hpp"

namespace rumour_mill {

std::string_view event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::Pot:
      return "pot";
    case EventKind::Switch:
      return "switch";
    case EventKind::Toggle:
      return "toggle";
    case EventKind::Crank:
      return "crank";
  }
  return "pot";
}

std::optional<EventKind> event_kind_from_name(std::string_view name) {
  for (EventKind k : {EventKind::Pot, EventKind::Switch, EventKind::Toggle, EventKind::Crank}) {
    if (name == event_kind_name(k)) return k;
  }
  return std::nullopt;
}

void validate_event(const InputEvent& event) {
  auto check = [&](int lo, int hi) {
    if (event.value < lo || event.value > hi) {
      throw InvalidEvent(fmt::format("{} value {} outside {}..{}", event_kind_name(event.kind),
                                     event.value, lo, hi));
    }
  };
  switch (event.kind) {
    case EventKind::Pot:
      check(0, kPotMax);
      break;
    case EventKind::Switch:
      check(1, static_cast<int>(kGenreCount));
      break;
    case EventKind::Toggle:
      check(0, 2);
      break;
    case EventKind::Crank:
      check(-kMaxCrankDelta, kMaxCrankDelta);
      break;
  }
}

ApplyResult apply_event(const PanelState& state, const InputEvent& event) {
  validate_event(event);
  ApplyResult result{state, false};
  PanelState& s = result.state;
  switch (event.kind) {
    case EventKind::Pot:
      s.pot_raw = event.value;
      break;
    case EventKind::Switch: {
      const bool bouncing =
          s.last_switch_event && event.at - *s.last_switch_event < kSwitchDebounce;
      s.last_switch_event = event.at;
      if (!bouncing) s.switch_pos = event.value;
      break;
    }
    case EventKind::Toggle:
      s.toggle_pos = kAllWhens[static_cast<std::size_t>(event.value)];
      break;
    case EventKind::Crank: {
      const double delta = std::max(0, event.value);
      const bool continuing = event.at - s.last_crank_event <= kCrankInactivity;
      s.crank_accum_deg = continuing ? s.crank_accum_deg + delta : delta;
      s.last_crank_event = event.at;
      if (s.crank_accum_deg >= kCrankTriggerDegrees) {
        s.crank_accum_deg = 0.0;
        result.trigger = true;
      }
      break;
    }
  }
  return result;
}

double effective_crank_deg(const PanelState& state, Timestamp now) {
  return now - state.last_crank_event > kCrankInactivity ? 0.0 : state.crank_accum_deg;
}

Genre genre_at_switch(int switch_pos) {
  if (switch_pos < 1 || switch_pos > static_cast<int>(kGenreCount)) {
    throw OutOfRange(fmt::format("switch position {} outside 1..{}", switch_pos, kGenreCount));
  }
  return kAllGenres[static_cast<std::size_t>(switch_pos - 1)];
}

MillSettings current_settings(const PanelState& state) {
  return MillSettings{pot_to_wackiness(state.pot_raw), genre_at_switch(state.switch_pos),
                      state.toggle_pos};
}

}  // namespace rumour_mill
