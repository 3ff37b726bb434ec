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

#include "needminer/filtering.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "needminer/rng.hpp"
#include "support.hpp"

using namespace needminer;
using corpus::TweetRecord;
using filtering::dedup_key;

namespace {

TweetRecord rec(std::string id, std::string text, std::string lang = "de",
                std::string at = "2015-03-01T10:00:00Z") {
  return {std::move(id), std::move(text), std::move(lang), std::move(at), corpus::Source::kStream};
}

std::vector<std::string> ids(const std::vector<TweetRecord>& records) {
  std::vector<std::string> out;
  for (const auto& r : records) out.push_back(r.id);
  return out;
}

std::vector<TweetRecord> random_corpus(Rng& rng, std::size_t n) {
  const std::vector<std::string> langs = {"de", "de", "de", "en", ""};
  const std::vector<std::string> bodies = {"Strom ist teuer", "Ladesäule kaputt", "eAuto geladen",
                                           "schau https://t.co/x", "www.example.de Info"};
  const std::vector<std::string> prefixes = {"", "RT ", "RT: ", "@bob ", "RT @alice: ", "@a @b "};
  std::vector<TweetRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    char at[32];
    std::snprintf(at, sizeof at, "2015-03-01T%02zu:00:00Z", rng.below(24));
    out.push_back(rec("r" + std::to_string(i),
                      prefixes[rng.below(prefixes.size())] + bodies[rng.below(bodies.size())],
                      langs[rng.below(langs.size())], at));
  }
  return out;
}

}  // namespace

TEST_CASE("is_german uses the language tag only") {
  CHECK(filtering::is_german(rec("1", "x", "de")));
  CHECK_FALSE(filtering::is_german(rec("1", "Das ist Deutsch", "en")));
  CHECK_FALSE(filtering::is_german(rec("1", "Das ist Deutsch", "")));
}

TEST_CASE("contains_url") {
  CHECK(filtering::contains_url("schau https://t.co/abc"));
  CHECK_FALSE(filtering::contains_url("kein Link hier"));
  CHECK(filtering::contains_url("besuch www.example.de"));
  CHECK(filtering::contains_url("HTTP://T.CO/X"));
  CHECK(filtering::contains_url("Link:\thttp://t.co/x"));
  CHECK_FALSE(filtering::contains_url("(http://t.co/x)"));
  CHECK_FALSE(filtering::contains_url("http:/kaputt"));
}

TEST_CASE("dedup_key strips prefixes") {
  CHECK(dedup_key("RT @alice: Strom ist teuer") == "strom ist teuer");
  CHECK(dedup_key("@bob Strom ist teuer") == "strom ist teuer");
  CHECK(dedup_key("Strom ist teuer") == "strom ist teuer");
  CHECK(dedup_key("  rt:  RT @a @b:  Strom \t ist   TEUER ") == "strom ist teuer");
  CHECK(dedup_key("Strom @bob ist teuer") == "strom @bob ist teuer");
  CHECK(dedup_key("RTL berichtet") == "rtl berichtet");
  CHECK(dedup_key("@a @b") == "");
}

TEST_CASE("dedup_key is idempotent") {
  Rng rng(3);
  const std::vector<std::string> parts = {"RT", "rt:", "@x", "@y:", "Strom", "ÄRGER", " ", "\t",
                                          "teuer", "RT@z", "@"};
  for (int i = 0; i < 2000; ++i) {
    std::string t;
    const auto n = rng.below(8);
    for (std::size_t j = 0; j < n; ++j) t += parts[rng.below(parts.size())] + (rng.below(2) ? " " : "");
    const auto k = dedup_key(t);
    CHECK(dedup_key(k) == k);
  }
}

TEST_CASE("funnel fixture filters to {10, 6, 4, 3}") {
  const auto records = corpus::read_records(test::fixture_dir() / "funnel_corpus.jsonl");
  const auto result = filtering::run_filters(records);
  const auto& r = result.report;
  CHECK(r.input_count == 10);
  CHECK(r.after_language == 6);
  CHECK(r.after_url == 4);
  CHECK(r.after_dedup == 3);
  CHECK(r.removed_language == std::vector<std::string>{"f07", "f08", "f09", "f10"});
  CHECK(r.removed_url == std::vector<std::string>{"f05", "f06"});
  // f02 is older than the retweet f01 and wins.
  CHECK(r.removed_duplicate == std::vector<std::string>{"f01"});
  CHECK(ids(result.retained) == std::vector<std::string>{"f02", "f03", "f04"});
}

TEST_CASE("the three prefix variants collapse to one record") {
  const std::vector<TweetRecord> records = {
      rec("a", "RT @alice: Strom ist teuer", "de", "2015-03-01T10:00:00Z"),
      rec("b", "@bob Strom ist teuer", "de", "2015-03-01T10:00:00Z"),
      rec("c", "Strom ist teuer", "de", "2015-03-01T11:00:00Z")};
  const auto result = filtering::run_filters(records);
  CHECK(result.report.after_dedup == 1);
  // Equal timestamps: the smaller id wins.
  CHECK(ids(result.retained) == std::vector<std::string>{"a"});
}

TEST_CASE("identity and empty corpora") {
  const std::vector<TweetRecord> clean = {rec("1", "a"), rec("2", "b"), rec("3", "c")};
  const auto r = filtering::run_filters(clean).report;
  CHECK(r.after_dedup == r.input_count);
  const auto empty = filtering::run_filters({}).report;
  CHECK(empty.input_count == 0);
  CHECK(empty.after_language == 0);
  CHECK(empty.after_url == 0);
  CHECK(empty.after_dedup == 0);
}

TEST_CASE("filter properties on random corpora") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto corpus = random_corpus(rng, rng.below(40));
    const auto result = filtering::run_filters(corpus);
    const auto& r = result.report;
    CHECK(r.input_count >= r.after_language);
    CHECK(r.after_language >= r.after_url);
    CHECK(r.after_url >= r.after_dedup);
    CHECK(result.retained.size() == r.after_dedup);

    std::set<std::string> keys;
    for (const auto& t : result.retained) {
      CHECK(filtering::is_german(t));
      CHECK_FALSE(filtering::contains_url(t.text));
      CHECK(keys.insert(dedup_key(t.text)).second);
    }

    // Language and URL filters commute; dedup runs last.
    const auto lu = filtering::drop_urls(filtering::keep_german(corpus));
    const auto ul = filtering::keep_german(filtering::drop_urls(corpus));
    CHECK(lu == ul);
    CHECK(filtering::deduplicate(lu) == result.retained);
  }
}
