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

#include "rumour_mill/builtin_backend.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "rumour_mill/errors.hpp"
#include "rumour_mill/sampler.hpp"

namespace rumour_mill {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t word_count(std::string_view s) { return tokenize(s).size(); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const std::string& pick(const std::vector<std::string>& options, double temperature, Rng& rng) {
  const std::vector<double> uniform(options.size(), 1.0);
  return options[temperature_sample(uniform, temperature, rng)];
}

// Lowercased alphanumerics of a token; "Senate's" -> "senates".
std::string normalize_word(std::string_view token) {
  std::string out;
  for (char c : token) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return out;
}

constexpr std::size_t kMinKeywordLength = 5;

std::set<std::string> keywords(std::string_view text) {
  std::set<std::string> out;
  for (const auto& token : tokenize(text)) {
    std::string w = normalize_word(token);
    if (w.size() >= kMinKeywordLength) out.insert(std::move(w));
  }
  return out;
}

}  // namespace

HeadlineGrammar parse_headline_grammar(std::string_view tsv) {
  HeadlineGrammar grammar;
  std::array<std::vector<std::string>*, 3> columns = {&grammar.subjects, &grammar.predicates,
                                                      &grammar.objects};
  std::size_t line_no = 0;
  while (!tsv.empty()) {
    ++line_no;
    const auto nl = tsv.find('\n');
    std::string_view line = tsv.substr(0, nl);
    tsv = nl == std::string_view::npos ? std::string_view{} : tsv.substr(nl + 1);
    if (trim(line).empty() || trim(line).front() == '#') continue;

    std::size_t column = 0;
    while (true) {
      if (column >= columns.size()) {
        throw ConfigError(fmt::format("headline list line {}: more than 3 columns", line_no));
      }
      const auto tab = line.find('\t');
      const std::string_view cell = trim(line.substr(0, tab));
      if (!cell.empty()) columns[column]->emplace_back(cell);
      if (tab == std::string_view::npos) break;
      line = line.substr(tab + 1);
      ++column;
    }
  }

  std::size_t min_words = 0, max_words = 0;
  constexpr std::array<std::string_view, 3> kNames = {"subject", "predicate", "object"};
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c]->empty()) {
      throw ConfigError(fmt::format("headline list has no {} phrases", kNames[c]));
    }
    std::size_t lo = SIZE_MAX, hi = 0;
    for (const auto& phrase : *columns[c]) {
      lo = std::min(lo, word_count(phrase));
      hi = std::max(hi, word_count(phrase));
    }
    min_words += lo;
    max_words += hi;
  }
  if (min_words < static_cast<std::size_t>(kMinHeadlineWords) ||
      max_words > static_cast<std::size_t>(kMaxHeadlineWords)) {
    throw ConfigError(fmt::format("headline phrases combine to {}..{} words, outside {}..{}",
                                  min_words, max_words, kMinHeadlineWords, kMaxHeadlineWords));
  }
  return grammar;
}

std::string generate_headline_from(const HeadlineGrammar& grammar, double temperature, Rng& rng) {
  std::string headline = pick(grammar.subjects, temperature, rng);
  headline += ' ';
  headline += pick(grammar.predicates, temperature, rng);
  headline += ' ';
  headline += pick(grammar.objects, temperature, rng);
  while (!headline.empty() && headline.back() == '.') headline.pop_back();
  if (std::islower(static_cast<unsigned char>(headline.front()))) {
    headline.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(headline.front())));
  }
  return headline;
}

std::vector<std::string> split_documents(std::string_view text) {
  std::vector<std::string> docs;
  std::string current;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (trim(line).empty()) {
      if (!current.empty()) docs.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (!current.empty()) current += ' ';
    current += trim(line);
  }
  if (!current.empty()) docs.push_back(std::move(current));
  return docs;
}

BuiltinBackend::BuiltinBackend(std::map<Genre, NgramModel> models,
                               std::map<Genre, HeadlineGrammar> grammars, int stop_sentences)
    : models_(std::move(models)), grammars_(std::move(grammars)), stop_sentences_(stop_sentences) {}

BuiltinBackend BuiltinBackend::load(const std::filesystem::path& data_dir, int order,
                                    int stop_sentences) {
  if (!std::filesystem::is_directory(data_dir)) {
    throw ConfigError(fmt::format("data directory '{}' does not exist", data_dir.string()));
  }
  std::map<Genre, NgramModel> models;
  std::map<Genre, HeadlineGrammar> grammars;
  for (Genre g : kConcreteGenres) {
    const std::string slug{genre_slug(g)};
    const auto corpus_path = data_dir / "corpora" / (slug + ".txt");
    if (std::filesystem::exists(corpus_path)) {
      const auto docs = split_documents(read_file(corpus_path));
      models.emplace(g, build_ngram_model(docs, order, g));
    }
    const auto headline_path = data_dir / "headlines" / (slug + ".headlines.tsv");
    if (std::filesystem::exists(headline_path)) {
      try {
        grammars.emplace(g, parse_headline_grammar(read_file(headline_path)));
      } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}: {}", headline_path.string(), e.what()));
      }
    }
  }
  return BuiltinBackend(std::move(models), std::move(grammars), stop_sentences);
}

std::string BuiltinBackend::generate_headline(double temperature, Genre effective_genre, Rng& rng) {
  return headline_with_seed(temperature, effective_genre, rng.derive_seed());
}

std::string BuiltinBackend::generate_story(std::string_view seed_text, const ControlSpec& spec,
                                           Rng& rng, int max_tokens) {
  return story_with_seed(seed_text, spec, rng.derive_seed(), max_tokens);
}

std::string BuiltinBackend::headline_with_seed(double temperature, Genre effective_genre,
                                               std::uint64_t seed) const {
  const auto it = grammars_.find(effective_genre);
  if (it == grammars_.end()) {
    throw ConfigMissing(
        fmt::format("no headline phrase lists for genre {}", genre_identifier(effective_genre)));
  }
  Rng rng{seed};
  return generate_headline_from(it->second, temperature, rng);
}

std::string BuiltinBackend::story_with_seed(std::string_view seed_text, const ControlSpec& spec,
                                            std::uint64_t seed, int max_tokens) const {
  const auto it = models_.find(spec.effective_genre);
  if (it == models_.end()) {
    throw ConfigMissing(
        fmt::format("no story corpus for genre {}", genre_identifier(spec.effective_genre)));
  }
  const NgramModel& model = it->second;
  Rng rng{seed};

  // Prefer sentence openings that share a content word with the headline.
  const std::set<std::string> wanted = keywords(seed_text);
  std::vector<const std::string*> candidates;
  for (const auto& start : model.start_contexts()) {
    for (const auto& token : tokenize(start)) {
      if (wanted.count(normalize_word(token)) != 0) {
        candidates.push_back(&start);
        break;
      }
    }
  }
  const std::string& start =
      candidates.empty()
          ? model.start_contexts()[rng.uniform_index(model.start_contexts().size())]
          : *candidates[rng.uniform_index(candidates.size())];

  const std::string text =
      generate_text_from(model, start, spec.temperature, rng, max_tokens, stop_sentences_);
  return fmt::format("{} - {}", format_dateline(spec.target_date), text);
}

std::string format_dateline(Date d) {
  static constexpr std::array<std::string_view, 12> kMonths = {
      "January", "February", "March",     "April",   "May",      "June",
      "July",    "August",   "September", "October", "November", "December"};
  return fmt::format("{} {}, {}", kMonths.at(static_cast<unsigned>(d.month()) - 1),
                     static_cast<unsigned>(d.day()), static_cast<int>(d.year()));
}

}  // namespace rumour_mill
