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

#include "rumour_mill/ticket.hpp"

#include <fmt/format.h>

#include <array>
#include <fstream>
#include <set>

#include "rumour_mill/errors.hpp"

namespace rumour_mill {

namespace {

// Unicode code points of CP437 bytes 0x80..0xFF.
constexpr std::array<char32_t, 128> kCp437High = {
    0x00C7, 0x00FC, 0x00E9, 0x00E2, 0x00E4, 0x00E0, 0x00E5, 0x00E7,  // 80
    0x00EA, 0x00EB, 0x00E8, 0x00EF, 0x00EE, 0x00EC, 0x00C4, 0x00C5,  // 88
    0x00C9, 0x00E6, 0x00C6, 0x00F4, 0x00F6, 0x00F2, 0x00FB, 0x00F9,  // 90
    0x00FF, 0x00D6, 0x00DC, 0x00A2, 0x00A3, 0x00A5, 0x20A7, 0x0192,  // 98
    0x00E1, 0x00ED, 0x00F3, 0x00FA, 0x00F1, 0x00D1, 0x00AA, 0x00BA,  // A0
    0x00BF, 0x2310, 0x00AC, 0x00BD, 0x00BC, 0x00A1, 0x00AB, 0x00BB,  // A8
    0x2591, 0x2592, 0x2593, 0x2502, 0x2524, 0x2561, 0x2562, 0x2556,  // B0
    0x2555, 0x2563, 0x2551, 0x2557, 0x255D, 0x255C, 0x255B, 0x2510,  // B8
    0x2514, 0x2534, 0x252C, 0x251C, 0x2500, 0x253C, 0x255E, 0x255F,  // C0
    0x255A, 0x2554, 0x2569, 0x2566, 0x2560, 0x2550, 0x256C, 0x2567,  // C8
    0x2568, 0x2564, 0x2565, 0x2559, 0x2558, 0x2552, 0x2553, 0x256B,  // D0
    0x256A, 0x2518, 0x250C, 0x2588, 0x2584, 0x258C, 0x2590, 0x2580,  // D8
    0x03B1, 0x00DF, 0x0393, 0x03C0, 0x03A3, 0x03C3, 0x00B5, 0x03C4,  // E0
    0x03A6, 0x0398, 0x03A9, 0x03B4, 0x221E, 0x03C6, 0x03B5, 0x2229,  // E8
    0x2261, 0x00B1, 0x2265, 0x2264, 0x2320, 0x2321, 0x00F7, 0x2248,  // F0
    0x00B0, 0x2219, 0x00B7, 0x221A, 0x207F, 0x00B2, 0x25A0, 0x00A0,  // F8
};

constexpr std::uint8_t kEsc = 0x1B;
constexpr std::uint8_t kGs = 0x1D;
constexpr std::uint8_t kLf = 0x0A;
constexpr std::uint8_t kReplacement = '?';
constexpr std::uint8_t kFeedLines = 4;

std::size_t display_width(std::string_view s) { return utf8_decode(s).size(); }

std::string centered(std::string_view text, std::size_t width) {
  const std::size_t len = display_width(text);
  const std::size_t pad = len < width ? (width - len) / 2 : 0;
  return std::string(pad, ' ') + std::string{text};
}

void append_wrapped(std::vector<std::string>& lines, std::string_view text, std::size_t width) {
  for (auto& line : wrap_text(text, width)) lines.push_back(std::move(line));
}

void append_settings(std::vector<std::string>& lines, const MillSettings& settings,
                     std::optional<Genre> effective, std::size_t width) {
  append_wrapped(lines, fmt::format("wackiness: {:.2f}", settings.wackiness.value()), width);
  std::string genre = fmt::format("genre: {}", genre_slug(settings.genre));
  if (settings.genre == Genre::Random && effective) {
    genre += fmt::format(" ({})", genre_slug(*effective));
  }
  append_wrapped(lines, genre, width);
  append_wrapped(lines, fmt::format("when: {}", when_name(settings.when)), width);
}

void check_width(std::size_t width) {
  if (width < kMinTicketWidth) {
    throw OutOfRange(fmt::format("ticket width {} is below {}", width, kMinTicketWidth));
  }
}

}  // namespace

std::u32string utf8_decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    }
    bool valid = len != 0 && i + len <= text.size();
    for (std::size_t k = 1; valid && k < len; ++k) {
      const auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) valid = false;
      cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong forms, surrogates and out-of-range values.
    static constexpr char32_t kMinForLength[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (valid && (cp < kMinForLength[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))) {
      valid = false;
    }
    if (!valid) {
      out.push_back(U'\uFFFD');
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string utf8_encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }
  return out;
}

std::optional<std::uint8_t> cp437_encode(char32_t codepoint) {
  if (codepoint >= 0x20 && codepoint < 0x7F) return static_cast<std::uint8_t>(codepoint);
  for (std::size_t i = 0; i < kCp437High.size(); ++i) {
    if (kCp437High[i] == codepoint) return static_cast<std::uint8_t>(0x80 + i);
  }
  return std::nullopt;
}

char32_t cp437_decode(std::uint8_t byte) {
  if (byte >= 0x80) return kCp437High[byte - 0x80];
  return byte;
}

std::vector<std::string> wrap_text(std::string_view text, std::size_t width) {
  if (width == 0) throw OutOfRange("wrap width must be positive");
  std::vector<std::string> lines;
  std::u32string current;
  const std::u32string all = utf8_decode(text);

  auto flush = [&] {
    if (!current.empty()) lines.push_back(utf8_encode(current));
    current.clear();
  };

  std::size_t i = 0;
  while (i < all.size()) {
    while (i < all.size() && (all[i] == U' ' || all[i] == U'\t' || all[i] == U'\n' || all[i] == U'\r')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < all.size() && !(all[i] == U' ' || all[i] == U'\t' || all[i] == U'\n' || all[i] == U'\r')) {
      ++i;
    }
    std::u32string_view word{all.data() + start, i - start};
    if (word.empty()) continue;

    if (word.size() > width) {
      flush();
      while (word.size() > width) {
        lines.push_back(utf8_encode(word.substr(0, width)));
        word.remove_prefix(width);
      }
    }
    if (word.empty()) continue;
    if (current.empty()) {
      current = word;
    } else if (current.size() + 1 + word.size() <= width) {
      current += U' ';
      current += word;
    } else {
      flush();
      current = word;
    }
  }
  flush();
  return lines;
}

Ticket render_ticket(const Rumour& rumour, std::size_t width) {
  check_width(width);
  Ticket t;
  t.id = rumour.id;
  t.kind = TicketKind::Rumour;
  t.created_at = rumour.created_at;

  auto& lines = t.lines;
  const std::string rule(width, '=');
  lines.push_back(rule);
  lines.push_back(centered(kRumourMarker, width));
  lines.push_back(centered(kRumourSubtitle, width));
  lines.emplace_back();
  for (auto& line : wrap_text(rumour.headline, width)) {
    t.emphasized.push_back(lines.size());
    lines.push_back(std::move(line));
  }
  lines.emplace_back();
  append_wrapped(lines, rumour.body, width);
  lines.emplace_back();
  append_settings(lines, rumour.settings, rumour.spec.effective_genre, width);
  append_wrapped(lines, fmt::format("source: {}", provenance_name(rumour.provenance)), width);
  append_wrapped(lines, format_timestamp(rumour.created_at), width);
  lines.push_back(rule);

  t.escpos = encode_escpos(t.lines, t.emphasized);
  return t;
}

Ticket render_apology(std::string id, const MillSettings& settings, Timestamp at,
                      std::size_t width) {
  check_width(width);
  Ticket t;
  t.id = std::move(id);
  t.kind = TicketKind::Apology;
  t.created_at = at;

  auto& lines = t.lines;
  const std::string rule(width, '=');
  lines.push_back(rule);
  t.emphasized.push_back(lines.size());
  lines.push_back(centered("*** MILL RESTING ***", width));
  lines.push_back(centered("no rumour this time", width));
  lines.emplace_back();
  append_wrapped(lines,
                 "The mill cannot reach its rumour generator and has nothing in stock for "
                 "these settings. Please crank again in a little while.",
                 width);
  lines.emplace_back();
  append_settings(lines, settings, std::nullopt, width);
  append_wrapped(lines, format_timestamp(at), width);
  lines.push_back(rule);

  t.escpos = encode_escpos(t.lines, t.emphasized);
  return t;
}

std::string plain_text(const Ticket& ticket) {
  std::string out;
  for (const auto& line : ticket.lines) {
    out += line;
    out += '\n';
  }
  return out;
}

std::vector<std::uint8_t> encode_escpos(std::span<const std::string> lines,
                                        std::span<const std::size_t> emphasized) {
  const std::set<std::size_t> bold(emphasized.begin(), emphasized.end());
  std::vector<std::uint8_t> out = {kEsc, '@'};
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out.insert(out.end(), {kEsc, 'E', static_cast<std::uint8_t>(bold.count(i) ? 1 : 0)});
    for (char32_t cp : utf8_decode(lines[i])) out.push_back(cp437_encode(cp).value_or(kReplacement));
    out.push_back(kLf);
  }
  out.insert(out.end(), {kEsc, 'd', kFeedLines, kGs, 'V', 0x01});
  return out;
}

std::vector<std::string> decode_escpos_text(std::span<const std::uint8_t> bytes) {
  std::vector<std::string> lines;
  std::u32string current;
  std::size_t i = 0;
  while (i < bytes.size()) {
    const std::uint8_t b = bytes[i];
    if (b == kEsc && i + 1 < bytes.size()) {
      i += bytes[i + 1] == '@' ? 2 : 3;
    } else if (b == kGs) {
      i += 3;
    } else if (b == kLf) {
      lines.push_back(utf8_encode(current));
      current.clear();
      ++i;
    } else {
      current.push_back(cp437_decode(b));
      ++i;
    }
  }
  return lines;
}

TicketSpool::TicketSpool(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path TicketSpool::write(const Ticket& ticket) const {
  const auto path = dir_ / (ticket.id + ".txt");
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << plain_text(ticket);
    if (!out.flush()) throw Error(fmt::format("cannot write spool file '{}'", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
  return path;
}

}  // namespace rumour_mill
