// Copyright 2026 The Needminer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "needminer/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <string>

#include "needminer/filtering.hpp"
#include "needminer/rng.hpp"

namespace needminer::synthetic {

namespace {

constexpr std::string_view kFiller[] = {
    "strom",     "akku",      "reichweite", "fahrt",   "heute",     "morgen",   "stadt",
    "autobahn",  "station",   "preis",      "kosten",  "wagen",     "motor",    "batterie",
    "leise",     "schnell",   "neu",        "grün",    "wetter",    "arbeit",   "urlaub",
    "familie",   "wochenende", "parkplatz", "kabel",   "stecker",   "strecke",  "kilometer",
    "zukunft",   "technik",   "modell",     "test",    "bericht",   "foto",     "video",
    "freund",    "nachbar",   "garage",     "tempo",   "winter",    "sommer",   "ampel",
};

constexpr std::string_view kKeyword[] = {"Elektroauto", "eAuto", "Ladesäule", "Renault ZOE",
                                         "Tesla Model S", "E-Mobility"};

std::string timestamp(std::size_t minutes) {
  const std::size_t day = 1 + minutes / (24 * 60);
  const std::size_t hour = (minutes / 60) % 24;
  const std::size_t minute = minutes % 60;
  char buf[32];
  std::snprintf(buf, sizeof buf, "2015-03-%02zuT%02zu:%02zu:00Z", std::min<std::size_t>(day, 28),
                hour, minute);
  return buf;
}

// The record index as single-digit tokens ("1 0 7"). Preprocessing drops
// one-character tokens, so this keeps raw texts distinct without adding
// features.
std::string serial_digits(std::size_t index) {
  std::string digits = std::to_string(index);
  std::string out;
  for (char d : digits) {
    out += out.empty() ? "" : " ";
    out += d;
  }
  return out;
}

std::string sentence(Rng& rng, bool need, const Options& o, std::size_t index) {
  std::vector<std::string> words;
  const auto pool = std::min(o.filler_pool, std::size(kFiller));
  const auto count = o.min_filler + rng.below(o.max_filler - o.min_filler + 1);
  for (std::size_t i = 0; i < count; ++i) {
    words.emplace_back(kFiller[rng.below(pool)]);
  }
  const auto keywords = std::clamp<std::size_t>(o.keyword_pool, 1, std::size(kKeyword));
  words.insert(words.begin() + static_cast<std::ptrdiff_t>(rng.below(words.size() + 1)),
               std::string(kKeyword[rng.below(keywords)]));
  if (need) {
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(rng.below(words.size() + 1)),
                 std::string(kNeedWord));
  }
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out + " " + serial_digits(index);
}

}  // namespace

Corpus separable_corpus(const Options& options) {
  Rng rng(options.seed);
  Corpus corpus;
  std::set<std::string> keys;
  const auto need_count =
      static_cast<std::size_t>(options.need_share * static_cast<double>(options.documents) + 0.5);

  for (std::size_t i = 0; i < options.documents; ++i) {
    const bool need = i % options.documents < need_count;
    std::string text;
    do {
      text = sentence(rng, need, options, i);
    } while (!keys.insert(filtering::dedup_key(text)).second);
    char id[24];
    std::snprintf(id, sizeof id, "t%04zu", i);
    corpus.records.push_back({id, text, "de", timestamp(i), corpus::Source::kStream});
  }
  // Interleave classes so ids do not reveal the label.
  std::vector<std::string> texts;
  for (const auto& r : corpus.records) texts.push_back(r.text);
  rng.shuffle(std::span<std::string>(texts));
  for (std::size_t i = 0; i < corpus.records.size(); ++i) corpus.records[i].text = texts[i];

  for (const auto& record : corpus.records) {
    const bool need = record.text.find(kNeedWord) != std::string::npos;
    for (int l = 1; l <= 3; ++l) {
      corpus.votes.push_back(
          {record.id, "L" + std::to_string(l), need, "2015-09-01T10:00:00Z"});
    }
    corpus.labels.push_back(
        {record.id, record.text, need ? labeling::Verdict::kNeed : labeling::Verdict::kNoNeed});
  }

  std::size_t next = options.documents;
  auto extra = [&](std::string text, std::string lang) {
    char id[24];
    std::snprintf(id, sizeof id, "x%04zu", next);
    corpus.records.push_back({id, std::move(text), std::move(lang), timestamp(next),
                              corpus::Source::kDecahose});
    ++next;
  };
  for (std::size_t i = 0; i < options.non_german; ++i) {
    extra("My new eCar needs a charging station " + std::to_string(i), i % 2 ? "en" : "");
  }
  for (std::size_t i = 0; i < options.with_url; ++i) {
    extra(sentence(rng, i % 2 == 0, options, next) + " https://t.co/x" + std::to_string(i), "de");
  }
  for (std::size_t i = 0; i < options.retweets && i < options.documents; ++i) {
    extra("RT @fan" + std::to_string(i) + ": " + corpus.records[i].text, "de");
  }
  return corpus;
}

}  // namespace needminer::synthetic
