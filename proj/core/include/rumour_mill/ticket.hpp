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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rumour_mill/clock.hpp"
#include "rumour_mill/rumour.hpp"

namespace rumour_mill {

inline constexpr std::size_t kDefaultTicketWidth = 32;
// Narrowest width that still fits the marker and subtitle unbroken.
inline constexpr std::size_t kMinTicketWidth = 24;

inline constexpr std::string_view kRumourMarker = "*** RUMOUR ***";
inline constexpr std::string_view kRumourSubtitle = "automatically generated";

enum class TicketKind { Rumour, Apology };

struct Ticket {
  std::string id;
  TicketKind kind = TicketKind::Rumour;
  std::vector<std::string> lines;
  std::vector<std::size_t> emphasized;  // indices into `lines`
  std::vector<std::uint8_t> escpos;
  Timestamp created_at;
};

// Greedy word wrap on spaces; words longer than `width` are hard-split.
// Widths count code points, not bytes.
std::vector<std::string> wrap_text(std::string_view text, std::size_t width);

// Throws OutOfRange for width < kMinTicketWidth.
Ticket render_ticket(const Rumour& rumour, std::size_t width = kDefaultTicketWidth);

// Printed when neither the backend nor the cache could supply a rumour.
Ticket render_apology(std::string id, const MillSettings& settings, Timestamp at,
                      std::size_t width = kDefaultTicketWidth);

// Lines joined with '\n', trailing newline included.
std::string plain_text(const Ticket& ticket);

// ESC @, then per line ESC E n / CP437 text / LF, then ESC d 4 and GS V 1.
std::vector<std::uint8_t> encode_escpos(std::span<const std::string> lines,
                                        std::span<const std::size_t> emphasized);

// Inverse of encode_escpos for the text content: control sequences are
// stripped and CP437 decoded back to UTF-8, one string per LF.
std::vector<std::string> decode_escpos_text(std::span<const std::uint8_t> bytes);

std::optional<std::uint8_t> cp437_encode(char32_t codepoint);
char32_t cp437_decode(std::uint8_t byte);

// Invalid UTF-8 decodes to U+FFFD per offending byte.
std::u32string utf8_decode(std::string_view text);
std::string utf8_encode(std::u32string_view text);

// Writes `<id>.txt` (the plain text) under a spool directory.
class TicketSpool {
 public:
  explicit TicketSpool(std::filesystem::path dir);
  std::filesystem::path write(const Ticket& ticket) const;
  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
};

}  // namespace rumour_mill
