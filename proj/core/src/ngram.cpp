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

#include "rumour_mill/ngram.hpp"

#include <fmt/format.h>

#include <cctype>
#include <sstream>

#include "rumour_mill/errors.hpp"
#include "rumour_mill/sampler.hpp"

namespace rumour_mill {

namespace {

std::string join(std::span<const std::string> tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace

NgramModel::NgramModel(int order, Genre genre, Table table, std::vector<std::string> start_contexts,
                       std::size_t skipped_documents)
    : order_(order),
      genre_(genre),
      table_(std::move(table)),
      start_contexts_(std::move(start_contexts)),
      skipped_documents_(skipped_documents) {}

const std::vector<Successor>* NgramModel::successors(std::string_view context) const {
  const auto it = table_.find(context);
  return it == table_.end() ? nullptr : &it->second;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

bool is_sentence_end(std::string_view token) {
  if (token.empty()) return false;
  const char last = token.back();
  return last == '.' || last == '!' || last == '?';
}

NgramModel build_ngram_model(std::span<const std::string> corpus, int n, Genre genre) {
  if (n < 2) throw OutOfRange(fmt::format("n-gram order {} is below 2", n));
  if (corpus.empty()) throw EmptyCorpus("cannot build an n-gram model from an empty corpus");

  const auto order = static_cast<std::size_t>(n);
  std::map<std::string, std::map<std::string, std::uint64_t>, std::less<>> counts;
  std::vector<std::string> starts;
  std::size_t skipped = 0;

  for (const auto& doc : corpus) {
    const std::vector<std::string> tokens = tokenize(doc);
    if (tokens.size() < order) {
      ++skipped;
      continue;
    }
    const std::span<const std::string> all{tokens};
    for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
      std::string context = join(all.subspan(i, order - 1));
      if (i == 0 || is_sentence_end(tokens[i - 1])) starts.push_back(context);
      ++counts[std::move(context)][tokens[i + order - 1]];
    }
  }
  if (skipped == corpus.size()) {
    throw DocumentTooShort(
        fmt::format("all {} documents have fewer than {} tokens", corpus.size(), n));
  }

  NgramModel::Table table;
  for (auto& [context, successors] : counts) {
    auto& list = table[context];
    list.reserve(successors.size());
    for (auto& [token, count] : successors) list.push_back({token, count});
  }
  return NgramModel(n, genre, std::move(table), std::move(starts), skipped);
}

std::string generate_text(const NgramModel& model, double temperature, Rng& rng, int max_tokens,
                          int stop_sentences) {
  const auto& starts = model.start_contexts();
  const std::string& start = starts[rng.uniform_index(starts.size())];
  return generate_text_from(model, start, temperature, rng, max_tokens, stop_sentences);
}

std::string generate_text_from(const NgramModel& model, std::string_view start_context,
                               double temperature, Rng& rng, int max_tokens, int stop_sentences) {
  if (max_tokens < 1) throw OutOfRange(fmt::format("max_tokens {} is below 1", max_tokens));
  const auto limit = static_cast<std::size_t>(max_tokens);
  const auto context_len = static_cast<std::size_t>(model.order() - 1);

  std::vector<std::string> out;
  int sentences = 0;
  auto done = [&] {
    return out.size() >= limit || (stop_sentences > 0 && sentences >= stop_sentences);
  };
  auto append = [&](std::string token) {
    if (is_sentence_end(token)) ++sentences;
    out.push_back(std::move(token));
  };

  for (auto& token : tokenize(start_context)) {
    if (done()) break;
    append(std::move(token));
  }

  std::vector<double> weights;
  while (!done()) {
    const std::size_t from = out.size() > context_len ? out.size() - context_len : 0;
    const std::string context = join(std::span<const std::string>{out}.subspan(from));
    const auto* successors =
        out.size() >= context_len ? model.successors(context) : nullptr;
    if (successors == nullptr) {
      // Document tail: resume from a fresh sentence start.
      const auto& starts = model.start_contexts();
      for (auto& token : tokenize(starts[rng.uniform_index(starts.size())])) {
        if (done()) break;
        append(std::move(token));
      }
      continue;
    }
    weights.clear();
    for (const auto& s : *successors) weights.push_back(static_cast<double>(s.count));
    append((*successors)[temperature_sample(weights, temperature, rng)].token);
  }

  std::string text = join(out);
  if (!text.empty() && std::islower(static_cast<unsigned char>(text.front()))) {
    text.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(text.front())));
  }
  return text;
}

}  // namespace rumour_mill
