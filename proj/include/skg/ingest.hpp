// Copyright 2026 The skg Authors.
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

// Line-delimited publication records and their mapping onto the graph.
//
// Each input line is a JSON object:
//   {"paper_id": "...", "title": "...", "authors": [{"id": "...", "name": "..."}],
//    "venue_id": "...", "venue_name": "...", "year": 2015}

#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <iterator>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "skg/error.hpp"
#include "skg/graph.hpp"

namespace skg {

struct Author {
  std::string id;
  std::string name;

  friend bool operator==(const Author&, const Author&) = default;
};

struct PublicationRecord {
  std::string paper_id;
  std::string title;
  std::vector<Author> authors;
  std::string venue_id;
  std::string venue_name;
  int year = 0;

  friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

struct LineDiagnostic {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

struct ParseResult {
  std::vector<PublicationRecord> records;
  std::vector<LineDiagnostic> diagnostics;
};

struct DatasetManifest {
  std::size_t record_count = 0;
  IdSet focus_venue_series;
  std::string source_description;
};

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

namespace detail {

/// Returns the offset of the first invalid UTF-8 byte, or npos.
inline std::size_t find_invalid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > s.size()) return i;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // overlong forms, surrogates, out of range
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
      return i;
    }
    i += len;
  }
  return std::string_view::npos;
}

inline bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

inline std::string require_string(const nlohmann::json& obj, const char* key, bool non_empty) {
  auto it = obj.find(key);
  if (it == obj.end()) throw std::invalid_argument(std::string("missing field '") + key + "'");
  if (!it->is_string()) throw std::invalid_argument(std::string("field '") + key + "' must be a string");
  auto value = it->get<std::string>();
  if (non_empty && value.empty()) {
    throw std::invalid_argument(std::string("field '") + key + "' must be non-empty");
  }
  return value;
}

inline PublicationRecord record_from_json(const nlohmann::json& obj) {
  if (!obj.is_object()) throw std::invalid_argument("line is not a JSON object");
  PublicationRecord rec;
  rec.paper_id = require_string(obj, "paper_id", true);
  rec.title = require_string(obj, "title", false);

  auto authors = obj.find("authors");
  if (authors == obj.end()) throw std::invalid_argument("missing field 'authors'");
  if (!authors->is_array()) throw std::invalid_argument("field 'authors' must be a list");
  if (authors->empty()) throw std::invalid_argument("field 'authors' must be non-empty");
  for (const auto& a : *authors) {
    if (!a.is_object()) throw std::invalid_argument("author entry must be an object");
    rec.authors.push_back(Author{require_string(a, "id", true), require_string(a, "name", false)});
  }

  rec.venue_id = require_string(obj, "venue_id", true);
  rec.venue_name = require_string(obj, "venue_name", false);

  auto year = obj.find("year");
  if (year == obj.end()) throw std::invalid_argument("missing field 'year'");
  if (!year->is_number_integer()) throw std::invalid_argument("field 'year' must be an integer");
  const auto y = year->get<std::int64_t>();
  if (y < kMinYear || y > kMaxYear) {
    throw std::invalid_argument("field 'year' out of range [1900, 2100]: " + std::to_string(y));
  }
  rec.year = static_cast<int>(y);
  return rec;
}

}  // namespace detail

/// Parses newline-delimited records. Bad lines become diagnostics; only input
/// that is not valid UTF-8 aborts the parse (FatalEncoding).
inline ParseResult parse_records(std::string_view input) {
  if (auto bad = detail::find_invalid_utf8(input); bad != std::string_view::npos) {
    throw Error(Errc::FatalEncoding, "invalid UTF-8 at byte offset " + std::to_string(bad));
  }
  ParseResult result;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < input.size()) {
    auto end = input.find('\n', pos);
    if (end == std::string_view::npos) end = input.size();
    const auto line = input.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (detail::is_blank(line)) continue;
    try {
      result.records.push_back(detail::record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      result.diagnostics.push_back({line_no, std::string("malformed JSON: ") + e.what()});
    } catch (const std::invalid_argument& e) {
      result.diagnostics.push_back({line_no, e.what()});
    }
  }
  return result;
}

inline ParseResult parse_records(std::istream& in) {
  std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_records(std::string_view(data));
}

/// One JSON line (no trailing newline) with a fixed key order.
inline std::string serialize_record(const PublicationRecord& rec) {
  nlohmann::ordered_json obj;
  obj["paper_id"] = rec.paper_id;
  obj["title"] = rec.title;
  auto authors = nlohmann::ordered_json::array();
  for (const auto& a : rec.authors) {
    nlohmann::ordered_json entry;
    entry["id"] = a.id;
    entry["name"] = a.name;
    authors.push_back(std::move(entry));
  }
  obj["authors"] = std::move(authors);
  obj["venue_id"] = rec.venue_id;
  obj["venue_name"] = rec.venue_name;
  obj["year"] = rec.year;
  return obj.dump();
}

inline DatasetManifest parse_manifest(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidParameter, std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::InvalidParameter, "manifest must be a JSON object");
  DatasetManifest m;
  try {
    m.record_count = doc.value("record_count", std::size_t{0});
    m.source_description = doc.value("source_description", std::string{});
    for (const auto& v : doc.value("focus_venue_series", nlohmann::json::array())) {
      m.focus_venue_series.insert(EntityId(v.get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidParameter, std::string("manifest field has wrong type: ") + e.what());
  }
  return m;
}

inline std::string serialize_manifest(const DatasetManifest& m) {
  nlohmann::ordered_json doc;
  doc["record_count"] = m.record_count;
  doc["source_description"] = m.source_description;
  auto focus = nlohmann::ordered_json::array();
  for (const auto& v : m.focus_venue_series) focus.push_back(v.str());
  doc["focus_venue_series"] = std::move(focus);
  return doc.dump(2);
}

/// Maps records onto a graph: one Publication per paper_id, one Venue per
/// venue_id, one Researcher per distinct author id, plus author, published-in
/// and year edges. Input order does not affect the result.
inline ScholarlyKnowledgeGraph build_graph(std::vector<PublicationRecord> records,
                                           const DatasetManifest& /*manifest*/ = {}) {
  std::stable_sort(records.begin(), records.end(),
                   [](const auto& a, const auto& b) { return a.paper_id < b.paper_id; });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].paper_id == records[i - 1].paper_id && !(records[i] == records[i - 1])) {
      throw Error(Errc::ConflictingRecord,
                  "paper_id " + records[i].paper_id + " appears with different field values");
    }
  }
  records.erase(std::unique(records.begin(), records.end()), records.end());

  ScholarlyKnowledgeGraph graph;
  for (const auto& rec : records) {
    const EntityId paper(rec.paper_id);
    const EntityId venue(rec.venue_id);
    graph.add_entity(paper, EntityKind::Publication, rec.title);
    graph.add_entity(venue, EntityKind::Venue, rec.venue_name);
    graph.add_edge(paper, Property::PublishedIn, venue);
    graph.add_edge(paper, Property::Year, rec.year);
    for (const auto& a : rec.authors) {
      const EntityId author(a.id);
      graph.add_entity(author, EntityKind::Researcher, a.name);
      graph.add_edge(author, Property::Author, paper);
    }
  }
  return graph;
}

}  // namespace skg
