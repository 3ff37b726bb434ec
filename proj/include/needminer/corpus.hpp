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

#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

// Line-delimited micro-blog records: parsing, keyword selection and the
// append-only corpus store that replays a streaming feed from files.
namespace needminer::corpus {

enum class Source { kStream, kDecahose, kFile };

std::string_view to_string(Source source);
Source parse_source(std::string_view name);

inline constexpr std::size_t kMaxTextChars = 1000;

struct TweetRecord {
  std::string id;
  std::string text;
  std::string lang;        // lowercase two-letter tag, or empty
  std::string created_at;  // ISO-8601 as delivered by the feed
  Source source = Source::kFile;

  bool operator==(const TweetRecord&) const = default;
};

// Parses one JSON object line. Throws MalformedLine, MissingField or
// EmptyText. Language tags other than two ASCII letters are dropped to "".
TweetRecord parse_record(std::string_view line);

// Inverse of parse_record: a single line (no terminator) with keys in the
// order id, text, lang, created_at, source.
std::string format_record(const TweetRecord& record);

// Strict reader for files written by this toolkit. Throws on the first bad
// line, naming its line number.
std::vector<TweetRecord> read_records(const std::filesystem::path& path);
void write_records(const std::filesystem::path& path,
                   const std::vector<TweetRecord>& records);

class KeywordSet {
 public:
  // Throws InvalidKeywordSet unless the list is non-empty, duplicate-free and
  // every phrase is already lowercase.
  explicit KeywordSet(std::vector<std::string> phrases);

  static KeywordSet load(const std::filesystem::path& path);

  const std::vector<std::string>& phrases() const { return phrases_; }

 private:
  std::vector<std::string> phrases_;
};

// True iff the case-folded text contains a phrase as a contiguous substring.
bool matches_keywords(std::string_view text, const KeywordSet& keywords);

struct IngestReport {
  std::size_t read = 0;          // non-blank lines
  std::size_t matched = 0;       // appended to the store
  std::size_t rejected = 0;      // unparseable lines
  std::size_t duplicates = 0;    // keyword match, id already stored
  std::size_t non_matching = 0;  // parsed, no keyword

  bool operator==(const IngestReport&) const = default;
};

// Append-only record file with an in-memory id index rebuilt on open.
// Single writer; the file is created on first append.
class CorpusStore {
 public:
  explicit CorpusStore(std::filesystem::path path);

  bool contains(std::string_view id) const;

  // Returns false (and writes nothing) when the id is already stored.
  bool append(const TweetRecord& record);

  void flush();

  const std::vector<TweetRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::vector<TweetRecord> records_;
  std::unordered_set<std::string> ids_;
  std::ofstream out_;
};

// Replays a line file into the store. Per-line failures are counted, never
// thrown; only an unreadable input file raises IoError.
IngestReport ingest(const std::filesystem::path& input, const KeywordSet& keywords,
                    CorpusStore& store);

}  // namespace needminer::corpus
