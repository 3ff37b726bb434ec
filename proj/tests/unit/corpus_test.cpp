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

#include "needminer/corpus.hpp"

#include <string>
#include <vector>

#include "needminer/io.hpp"
#include "needminer/rng.hpp"
#include "support.hpp"

using namespace needminer;
using corpus::KeywordSet;
using corpus::TweetRecord;

namespace {

std::string line(const std::string& id, const std::string& text, const std::string& lang = "de") {
  return R"({"id":")" + id + R"(","text":")" + text + R"(","lang":")" + lang +
         R"(","created_at":"2015-03-01T10:00:00Z","source":"stream"})";
}

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
  std::string content;
  for (const auto& l : lines) content += l + "\n";
  io::write_text(path, content);
}

// Uppercase for ASCII and the German umlauts.
std::string upper(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c == 0xC3 && i + 1 < s.size()) {
      const auto n = static_cast<unsigned char>(s[i + 1]);
      out += static_cast<char>(c);
      out += static_cast<char>(n >= 0xA0 && n <= 0xBE && n != 0xB7 ? n - 0x20 : n);
      ++i;
    } else {
      out += static_cast<char>(c >= 'a' && c <= 'z' ? c - 32 : c);
    }
  }
  return out;
}

KeywordSet eauto() { return KeywordSet({"eauto"}); }

}  // namespace

TEST_CASE("parse_record copies the fields of a well-formed line") {
  const auto r = corpus::parse_record(R"({"id":"1","text":"Elektroauto laden ist teuer","lang":"de"})");
  CHECK(r.id == "1");
  CHECK(r.text == "Elektroauto laden ist teuer");
  CHECK(r.lang == "de");
  CHECK(r.created_at.empty());
}

TEST_CASE("parse_record validation") {
  CHECK_ERROR(corpus::parse_record(R"({"id":"2","lang":"de"})"), ErrorCode::kMissingField);
  CHECK_ERROR(corpus::parse_record(R"({"id":"","text":"x"})"), ErrorCode::kMissingField);
  CHECK_ERROR(corpus::parse_record(R"({"text":"x"})"), ErrorCode::kMissingField);
  CHECK_ERROR(corpus::parse_record(R"({"id":"3","text":"  \t "})"), ErrorCode::kEmptyText);
  CHECK_ERROR(corpus::parse_record("not a record"), ErrorCode::kMalformedLine);
  CHECK_ERROR(corpus::parse_record(R"(["id","text"])"), ErrorCode::kMalformedLine);
  CHECK_ERROR(corpus::parse_record(R"({"id":4,"text":"x"})"), ErrorCode::kMalformedLine);
  CHECK_ERROR(corpus::parse_record(R"({"id":"5","text":"x","source":"carrier pigeon"})"),
              ErrorCode::kMalformedLine);
}

TEST_CASE("parse_record keeps surrounding whitespace of the text") {
  CHECK(corpus::parse_record(R"({"id":"1","text":"  Strom \n"})").text == "  Strom \n");
}

TEST_CASE("text length cap counts characters, not bytes") {
  std::string ok;
  for (int i = 0; i < 1000; ++i) ok += "ä";
  CHECK(corpus::parse_record(R"({"id":"1","text":")" + ok + "\"}").text == ok);
  CHECK_ERROR(corpus::parse_record(R"({"id":"1","text":")" + ok + "x\"}"),
              ErrorCode::kMalformedLine);
}

TEST_CASE("language tags are lowercased two-letter codes") {
  CHECK(corpus::parse_record(R"({"id":"1","text":"x","lang":"DE"})").lang == "de");
  CHECK(corpus::parse_record(R"({"id":"1","text":"x","lang":"und"})").lang.empty());
  CHECK(corpus::parse_record(R"({"id":"1","text":"x"})").lang.empty());
}

TEST_CASE("format_record and parse_record round-trip") {
  const TweetRecord r{"42", "Ladesäule \"kaputt\"\n", "de", "2015-03-01T10:00:00Z",
                      corpus::Source::kDecahose};
  const auto text = corpus::format_record(r);
  CHECK(text.find('\n') == std::string::npos);
  CHECK(corpus::parse_record(text) == r);
}

TEST_CASE("keyword sets are non-empty, lowercase and duplicate-free") {
  CHECK_ERROR(KeywordSet({}), ErrorCode::kInvalidKeywordSet);
  CHECK_ERROR(KeywordSet({"eauto", "eauto"}), ErrorCode::kInvalidKeywordSet);
  CHECK_ERROR(KeywordSet({"eAuto"}), ErrorCode::kInvalidKeywordSet);
  CHECK_ERROR(KeywordSet({""}), ErrorCode::kInvalidKeywordSet);
  CHECK(KeywordSet({"eauto", "bmw i3"}).phrases().size() == 2);
}

TEST_CASE("bundled keyword file") {
  const auto ks = KeywordSet::load(test::data_dir() / "keywords.txt");
  CHECK(ks.phrases().size() == 23);
  CHECK(corpus::matches_keywords("Heute mit dem Renault ZOE unterwegs", ks));
  CHECK(corpus::matches_keywords("Die LADESÄULE ist frei", ks));
}

TEST_CASE("matches_keywords") {
  CHECK(corpus::matches_keywords("Mein neues eAuto!", eauto()));
  CHECK_FALSE(corpus::matches_keywords("nothing relevant here", eauto()));
  CHECK(corpus::matches_keywords("Der BMW I3 ist da", KeywordSet({"bmw i3"})));
  CHECK_FALSE(corpus::matches_keywords("Der BMW  I3 ist da", KeywordSet({"bmw i3"})));
  CHECK(corpus::matches_keywords("#eautofahren", eauto()));
}

TEST_CASE("matches_keywords is invariant under uppercasing") {
  const KeywordSet ks({"eauto", "ladesäule", "bmw i3", "ö"});
  const std::vector<std::string> pieces = {"e", "a", "u", "t", "o", "ä", "ö", "ü", "s", "l",
                                           " ", "bmw", "i3", "lade", "säule", "!", "ß"};
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    std::string t;
    const auto n = rng.below(12);
    for (std::size_t j = 0; j < n; ++j) t += pieces[rng.below(pieces.size())];
    CHECK(corpus::matches_keywords(t, ks) == corpus::matches_keywords(upper(t), ks));
  }
}

TEST_CASE("ingest counts") {
  test::TempDir dir;
  const auto input = dir / "in.jsonl";

  SUBCASE("five matching lines") {
    write_lines(input, {line("1", "eAuto a"), line("2", "eAuto b"), line("3", "eAuto c"),
                        line("4", "eAuto d"), line("5", "eAuto e")});
    corpus::CorpusStore store(dir / "store.jsonl");
    const auto r = corpus::ingest(input, eauto(), store);
    CHECK(r == corpus::IngestReport{5, 5, 0, 0, 0});

    const auto again = corpus::ingest(input, eauto(), store);
    CHECK(again.duplicates == 5);
    CHECK(again.matched == 0);
    CHECK(store.size() == 5);
  }

  SUBCASE("malformed line among four") {
    write_lines(input, {line("1", "eAuto a"), "{broken", line("2", "eAuto b"), line("3", "eAuto c")});
    corpus::CorpusStore store(dir / "store.jsonl");
    const auto r = corpus::ingest(input, eauto(), store);
    CHECK(r.read == 4);
    CHECK(r.rejected == 1);
    CHECK(r.matched == 3);
  }

  SUBCASE("non-matching and blank lines") {
    write_lines(input, {line("1", "eAuto a"), "", line("2", "Fahrrad"), "   "});
    corpus::CorpusStore store(dir / "store.jsonl");
    const auto r = corpus::ingest(input, eauto(), store);
    CHECK(r == corpus::IngestReport{2, 1, 0, 0, 1});
  }

  SUBCASE("missing input") {
    corpus::CorpusStore store(dir / "store.jsonl");
    CHECK_ERROR(corpus::ingest(dir / "absent.jsonl", eauto(), store), ErrorCode::kIoError);
  }
}

TEST_CASE("ingest is idempotent and conserves counts") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    test::TempDir dir;
    std::vector<std::string> lines;
    const auto n = 1 + rng.below(30);
    for (std::size_t i = 0; i < n; ++i) {
      const auto id = std::to_string(rng.below(15));
      switch (rng.below(4)) {
        case 0: lines.push_back(line(id, "Fahrrad " + id)); break;
        case 1: lines.push_back("{\"id\":"); break;
        default: lines.push_back(line(id, "eAuto " + id)); break;
      }
    }
    write_lines(dir / "in.jsonl", lines);

    corpus::CorpusStore once(dir / "once.jsonl");
    const auto r1 = corpus::ingest(dir / "in.jsonl", eauto(), once);
    CHECK(r1.read == r1.matched + r1.duplicates + r1.non_matching + r1.rejected);
    CHECK(once.size() == r1.matched);

    corpus::CorpusStore twice(dir / "twice.jsonl");
    corpus::ingest(dir / "in.jsonl", eauto(), twice);
    const auto before = twice.size();
    const auto r2 = corpus::ingest(dir / "in.jsonl", eauto(), twice);
    CHECK(r2.matched == 0);
    CHECK(twice.size() == before);
    twice.flush();
    once.flush();
    CHECK(io::read_text(dir / "once.jsonl") == io::read_text(dir / "twice.jsonl"));
  }
}

TEST_CASE("corpus store rebuilds its index on open") {
  test::TempDir dir;
  {
    corpus::CorpusStore store(dir / "store.jsonl");
    CHECK(store.append(corpus::parse_record(line("a", "eAuto"))));
    CHECK_FALSE(store.append(corpus::parse_record(line("a", "eAuto again"))));
    CHECK(store.append(corpus::parse_record(line("b", "eAuto"))));
  }
  corpus::CorpusStore reopened(dir / "store.jsonl");
  CHECK(reopened.size() == 2);
  CHECK(reopened.contains("a"));
  CHECK_FALSE(reopened.append(corpus::parse_record(line("b", "x"))));
  CHECK(corpus::read_records(dir / "store.jsonl").size() == 2);
}

TEST_CASE("read_records reports the offending line") {
  test::TempDir dir;
  write_lines(dir / "bad.jsonl", {line("1", "ok"), R"({"id":"2"})"});
  try {
    corpus::read_records(dir / "bad.jsonl");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingField);
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}
