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

#include <algorithm>
#include <json.hpp>

#include "needminer/error.hpp"
#include "needminer/io.hpp"
#include "needminer/text.hpp"

namespace needminer::corpus {

namespace {

using Json = nlohmann::json;

// Returns the string member, or nullptr when the key is absent or null.
const std::string* string_field(const Json& object, const char* key) {
  const auto it = object.find(key);
  if (it == object.end() || it->is_null()) return nullptr;
  if (!it->is_string()) {
    throw Error(ErrorCode::kMalformedLine, std::string("field '") + key + "' is not a string");
  }
  return it->get_ptr<const std::string*>();
}

std::string normalize_lang(std::string_view lang) {
  if (lang.size() != 2) return {};
  std::string out;
  for (char c : lang) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 0x20);
    if (c < 'a' || c > 'z') return {};
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string_view to_string(Source source) {
  switch (source) {
    case Source::kStream: return "stream";
    case Source::kDecahose: return "decahose";
    case Source::kFile: return "file";
  }
  return "file";
}

Source parse_source(std::string_view name) {
  if (name == "stream") return Source::kStream;
  if (name == "decahose") return Source::kDecahose;
  if (name == "file") return Source::kFile;
  throw Error(ErrorCode::kMalformedLine, "unknown source '" + std::string(name) + "'");
}

TweetRecord parse_record(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  Json object;
  try {
    object = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kMalformedLine, e.what());
  }
  if (!object.is_object()) throw Error(ErrorCode::kMalformedLine, "not an object");

  TweetRecord record;
  const auto* id = string_field(object, "id");
  if (id == nullptr || id->empty()) throw Error(ErrorCode::kMissingField, "id");
  record.id = *id;

  const auto* text = string_field(object, "text");
  if (text == nullptr) throw Error(ErrorCode::kMissingField, "text");
  if (text::trim(*text).empty()) throw Error(ErrorCode::kEmptyText, "record " + record.id);
  if (text::char_count(*text) > kMaxTextChars) {
    throw Error(ErrorCode::kMalformedLine, "text longer than 1000 characters");
  }
  record.text = *text;

  if (const auto* lang = string_field(object, "lang")) record.lang = normalize_lang(*lang);
  if (const auto* created = string_field(object, "created_at")) record.created_at = *created;
  if (const auto* source = string_field(object, "source")) {
    record.source = parse_source(*source);
  }
  return record;
}

std::string format_record(const TweetRecord& record) {
  nlohmann::ordered_json object;
  object["id"] = record.id;
  object["text"] = record.text;
  object["lang"] = record.lang;
  object["created_at"] = record.created_at;
  object["source"] = std::string(to_string(record.source));
  return object.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::vector<TweetRecord> read_records(const std::filesystem::path& path) {
  std::vector<TweetRecord> records;
  const auto lines = io::read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (text::trim(lines[i]).empty()) continue;
    try {
      records.push_back(parse_record(lines[i]));
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return records;
}

void write_records(const std::filesystem::path& path,
                   const std::vector<TweetRecord>& records) {
  std::string content;
  for (const auto& record : records) {
    content += format_record(record);
    content += '\n';
  }
  io::write_text(path, content);
}

KeywordSet::KeywordSet(std::vector<std::string> phrases) : phrases_(std::move(phrases)) {
  if (phrases_.empty()) throw Error(ErrorCode::kInvalidKeywordSet, "no keywords");
  for (const auto& phrase : phrases_) {
    if (text::trim(phrase).empty()) {
      throw Error(ErrorCode::kInvalidKeywordSet, "blank keyword");
    }
    if (text::fold_case(phrase) != phrase) {
      throw Error(ErrorCode::kInvalidKeywordSet, "keyword not lowercase: " + phrase);
    }
  }
  auto sorted = phrases_;
  std::sort(sorted.begin(), sorted.end());
  if (const auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw Error(ErrorCode::kInvalidKeywordSet, "duplicate keyword: " + *dup);
  }
}

KeywordSet KeywordSet::load(const std::filesystem::path& path) {
  return KeywordSet(io::load_entry_list(path));
}

bool matches_keywords(std::string_view text, const KeywordSet& keywords) {
  const std::string folded = text::fold_case(text);
  return std::any_of(keywords.phrases().begin(), keywords.phrases().end(),
                     [&](const std::string& phrase) {
                       return folded.find(phrase) != std::string::npos;
                     });
}

CorpusStore::CorpusStore(std::filesystem::path path) : path_(std::move(path)) {
  if (!std::filesystem::exists(path_)) return;
  for (auto& record : read_records(path_)) {
    if (!ids_.insert(record.id).second) {
      throw Error(ErrorCode::kMalformedLine,
                  path_.string() + ": duplicate id in store: " + record.id);
    }
    records_.push_back(std::move(record));
  }
}

bool CorpusStore::contains(std::string_view id) const {
  return ids_.contains(std::string(id));
}

bool CorpusStore::append(const TweetRecord& record) {
  if (ids_.contains(record.id)) return false;
  if (!out_.is_open()) {
    out_.open(path_, std::ios::binary | std::ios::app);
    if (!out_) throw Error(ErrorCode::kIoError, "cannot append to " + path_.string());
  }
  out_ << format_record(record) << '\n';
  if (!out_) throw Error(ErrorCode::kIoError, "write failed: " + path_.string());
  ids_.insert(record.id);
  records_.push_back(record);
  return true;
}

void CorpusStore::flush() {
  if (out_.is_open()) out_.flush();
}

IngestReport ingest(const std::filesystem::path& input, const KeywordSet& keywords,
                    CorpusStore& store) {
  IngestReport report;
  for (const auto& line : io::read_lines(input)) {
    if (text::trim(line).empty()) continue;
    ++report.read;
    TweetRecord record;
    try {
      record = parse_record(line);
    } catch (const Error&) {
      ++report.rejected;
      continue;
    }
    if (!matches_keywords(record.text, keywords)) {
      ++report.non_matching;
    } else if (store.append(record)) {
      ++report.matched;
    } else {
      ++report.duplicates;
    }
  }
  store.flush();
  return report;
}

}  // namespace needminer::corpus
