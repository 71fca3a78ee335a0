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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rumour_mill/params.hpp"
#include "rumour_mill/rng.hpp"

namespace rumour_mill {

struct Successor {
  std::string token;
  std::uint64_t count = 0;

  friend bool operator==(const Successor&, const Successor&) = default;
};

// Word-level n-gram table. Contexts are the (n-1) preceding tokens joined by
// single spaces. Successor lists are sorted by token and every count is
// positive. Immutable once built.
class NgramModel {
 public:
  using Table = std::map<std::string, std::vector<Successor>, std::less<>>;

  NgramModel(int order, Genre genre, Table table, std::vector<std::string> start_contexts,
             std::size_t skipped_documents);

  int order() const noexcept { return order_; }
  Genre genre() const noexcept { return genre_; }
  const Table& table() const noexcept { return table_; }
  const std::vector<std::string>& start_contexts() const noexcept { return start_contexts_; }
  // Documents dropped for having fewer than `order` tokens.
  std::size_t skipped_documents() const noexcept { return skipped_documents_; }

  // nullptr when the context never had a successor in the corpus.
  const std::vector<Successor>* successors(std::string_view context) const;

 private:
  int order_;
  Genre genre_;
  Table table_;
  std::vector<std::string> start_contexts_;
  std::size_t skipped_documents_;
};

std::vector<std::string> tokenize(std::string_view text);

// Token ends a sentence when its last character is '.', '!' or '?'.
bool is_sentence_end(std::string_view token);

// Throws OutOfRange for n < 2, EmptyCorpus, and DocumentTooShort when every
// document is shorter than n tokens.
NgramModel build_ngram_model(std::span<const std::string> corpus, int n, Genre genre);

// Starts from a start context chosen by `rng`, then repeatedly
// temperature-samples successors. Stops at `max_tokens` tokens or after
// `stop_sentences` sentence terminators. Output is space-joined with the
// first letter capitalized. When the chain reaches a context that has no
// successor (a document tail) it resumes from a fresh start context.
std::string generate_text(const NgramModel& model, double temperature, Rng& rng, int max_tokens,
                          int stop_sentences);

// As generate_text, but from a caller-chosen start context.
std::string generate_text_from(const NgramModel& model, std::string_view start_context,
                               double temperature, Rng& rng, int max_tokens, int stop_sentences);

}  // namespace rumour_mill
