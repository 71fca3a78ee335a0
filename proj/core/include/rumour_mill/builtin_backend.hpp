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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rumour_mill/backend.hpp"
#include "rumour_mill/ngram.hpp"

namespace rumour_mill {

// Subject / predicate / object phrase lists for one genre.
struct HeadlineGrammar {
  std::vector<std::string> subjects;
  std::vector<std::string> predicates;
  std::vector<std::string> objects;
};

inline constexpr int kMinHeadlineWords = 4;
inline constexpr int kMaxHeadlineWords = 14;

// Parses a `<genre>.headlines.tsv` file body: tab-separated
// subject/predicate/object columns, '#' comments, empty cells allowed.
// Throws ConfigError when a column is empty or when some combination of
// phrases would fall outside [kMinHeadlineWords, kMaxHeadlineWords].
HeadlineGrammar parse_headline_grammar(std::string_view tsv);

// Fills <Subject> <Predicate> <Object>, each slot drawn with
// temperature_sample over uniform weights. No terminal period.
std::string generate_headline_from(const HeadlineGrammar& grammar, double temperature, Rng& rng);

// Documents are separated by blank lines.
std::vector<std::string> split_documents(std::string_view text);

// Desk-scale stand-in for the remote language models: template headlines
// and per-genre n-gram stories, all loaded from a data directory laid out as
//
//   <dir>/corpora/<slug>.txt
//   <dir>/headlines/<slug>.headlines.tsv
class BuiltinBackend final : public GenerationBackend {
 public:
  static constexpr int kDefaultOrder = 3;
  static constexpr int kDefaultStopSentences = 4;

  BuiltinBackend(std::map<Genre, NgramModel> models, std::map<Genre, HeadlineGrammar> grammars,
                 int stop_sentences = kDefaultStopSentences);

  static BuiltinBackend load(const std::filesystem::path& data_dir, int order = kDefaultOrder,
                             int stop_sentences = kDefaultStopSentences);

  // Both overrides draw one child seed from `rng` and delegate to the
  // *_with_seed forms, so a remote server running the same data produces
  // identical text from the forwarded seed.
  std::string generate_headline(double temperature, Genre effective_genre, Rng& rng) override;
  std::string generate_story(std::string_view seed_text, const ControlSpec& spec, Rng& rng,
                             int max_tokens) override;

  // Throws ConfigMissing if the genre has no phrase lists.
  std::string headline_with_seed(double temperature, Genre effective_genre,
                                 std::uint64_t seed) const;
  // Throws ConfigMissing if the genre has no corpus model.
  std::string story_with_seed(std::string_view seed_text, const ControlSpec& spec,
                              std::uint64_t seed, int max_tokens) const;

  const std::map<Genre, HeadlineGrammar>& grammars() const noexcept { return grammars_; }
  const std::map<Genre, NgramModel>& models() const noexcept { return models_; }

 private:
  std::map<Genre, NgramModel> models_;
  std::map<Genre, HeadlineGrammar> grammars_;
  int stop_sentences_;
};

// "May 4, 2020"
std::string format_dateline(Date d);

}  // namespace rumour_mill
