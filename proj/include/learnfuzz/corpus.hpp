// Copyright 2026 The learnfuzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEARNFUZZ_CORPUS_HPP_
#define LEARNFUZZ_CORPUS_HPP_

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "learnfuzz/error.hpp"

namespace learnfuzz::corpus {

/// One non-binary indirect object, from its "<id> <gen> obj" line through
/// "endobj" inclusive.
struct ObjectRecord {
  std::uint64_t object_id = 0;
  std::uint64_t generation = 0;
  std::string body;
  std::string source;

  friend bool operator==(const ObjectRecord&, const ObjectRecord&) = default;
};

struct Window {
  std::string input;
  std::string target;
};

struct TrainingSet {
  std::string text;
  std::size_t window_size = 0;
  std::vector<Window> windows;
};

namespace detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_boundary(char c) {
  switch (c) {
    case '\0': case '\t': case '\n': case '\f': case '\r': case ' ':
    case '(': case ')': case '<': case '>': case '[': case ']':
    case '{': case '}': case '/': case '%':
      return true;
    default:
      return false;
  }
}

// Canonical non-negative decimal: no leading zeros except "0" itself.
inline bool parse_canonical(std::string_view digits, std::uint64_t& value) {
  if (digits.empty() || (digits.size() > 1 && digits[0] == '0')) return false;
  auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  return res.ec == std::errc{} && res.ptr == digits.data() + digits.size();
}

// Matches "<digits> <digits> obj" starting exactly at `pos`.
inline bool match_header(std::string_view text, std::size_t pos,
                         std::uint64_t& id, std::uint64_t& gen,
                         std::size_t& header_end) {
  if (pos > 0 && !is_boundary(text[pos - 1])) return false;
  std::size_t p = pos;
  while (p < text.size() && is_digit(text[p])) ++p;
  if (!parse_canonical(text.substr(pos, p - pos), id)) return false;
  if (p >= text.size() || text[p] != ' ') return false;
  const std::size_t gen_start = ++p;
  while (p < text.size() && is_digit(text[p])) ++p;
  if (!parse_canonical(text.substr(gen_start, p - gen_start), gen)) return false;
  if (p >= text.size() || text[p] != ' ') return false;
  ++p;
  if (text.substr(p, 3) != "obj") return false;
  p += 3;
  if (p < text.size() && !is_boundary(text[p])) return false;
  header_end = p;
  return true;
}

}  // namespace detail

/// Best-effort textual scan for `<digits> <digits> obj ... endobj` regions.
/// Regions whose interior mentions "stream" are skipped whole. Bytes are
/// treated as Latin-1; nothing here can fail.
inline std::vector<ObjectRecord> extract_objects(std::string_view bytes,
                                                 std::string_view source = {}) {
  std::vector<ObjectRecord> out;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const std::size_t obj_kw = bytes.find("obj", pos);
    if (obj_kw == std::string_view::npos) break;
    // Walk back over "<digits> <digits> " to a candidate header start.
    std::size_t start = obj_kw;
    bool candidate = false;
    if (start >= 4 && bytes[start - 1] == ' ') {
      std::size_t p = start - 1;
      while (p > 0 && detail::is_digit(bytes[p - 1])) --p;
      if (p < start - 1 && p >= 2 && bytes[p - 1] == ' ') {
        std::size_t q = p - 1;
        while (q > 0 && detail::is_digit(bytes[q - 1])) --q;
        if (q < p - 1) {
          start = q;
          candidate = true;
        }
      }
    }
    std::uint64_t id = 0;
    std::uint64_t gen = 0;
    std::size_t header_end = 0;
    if (!candidate || !detail::match_header(bytes, start, id, gen, header_end)) {
      pos = obj_kw + 3;
      continue;
    }
    const std::size_t end_kw = bytes.find("endobj", header_end);
    if (end_kw == std::string_view::npos) break;
    const std::size_t end = end_kw + 6;
    const std::string_view body = bytes.substr(start, end - start);
    if (body.find("stream") == std::string_view::npos) {
      out.push_back(ObjectRecord{id, gen, std::string(body), std::string(source)});
    }
    pos = end;
  }
  return out;
}

/// Drops objects whose body length falls outside [min_len, max_len].
inline std::vector<ObjectRecord> filter_by_length(std::vector<ObjectRecord> objects,
                                                  std::size_t min_len,
                                                  std::size_t max_len) {
  std::erase_if(objects, [&](const ObjectRecord& o) {
    return o.body.size() < min_len || o.body.size() > max_len;
  });
  return objects;
}

/// Concatenation used for training: every body followed by one newline.
inline std::string concatenate(const std::vector<ObjectRecord>& objects) {
  std::string text;
  for (const auto& o : objects) {
    text += o.body;
    text += '\n';
  }
  return text;
}

/// Splits the concatenated corpus into consecutive windows of size d with
/// targets shifted by one character. A trailing fragment is discarded.
inline TrainingSet build_windows(const std::vector<ObjectRecord>& objects,
                                 std::size_t d) {
  if (d == 0) throw Error(Errc::invalid_config, "window size must be >= 1");
  TrainingSet set;
  set.text = concatenate(objects);
  set.window_size = d;
  if (set.text.size() < d + 1) {
    throw Error(Errc::corpus_too_small,
                "corpus has " + std::to_string(set.text.size()) +
                    " characters, need at least " + std::to_string(d + 1));
  }
  const std::size_t count = (set.text.size() - 1) / d;
  set.windows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    set.windows.push_back(
        Window{set.text.substr(i * d, d), set.text.substr(i * d + 1, d)});
  }
  return set;
}

inline constexpr std::string_view kRecordSeparator = "%%OBJ%%";

/// objects.txt layout: each body, a newline, then a "%%OBJ%%" line.
inline std::string write_object_file(const std::vector<ObjectRecord>& objects) {
  std::string out;
  for (const auto& o : objects) {
    out += o.body;
    out += '\n';
    out += kRecordSeparator;
    out += '\n';
  }
  return out;
}

inline std::vector<ObjectRecord> read_object_file(std::string_view text,
                                                  std::string_view source = {}) {
  std::vector<ObjectRecord> out;
  const std::string sep = "\n" + std::string(kRecordSeparator) + "\n";
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find(sep, pos);
    if (end == std::string_view::npos) break;
    const std::string_view body = text.substr(pos, end - pos);
    ObjectRecord rec;
    rec.body = std::string(body);
    rec.source = std::string(source);
    std::size_t header_end = 0;
    detail::match_header(body, 0, rec.object_id, rec.generation, header_end);
    out.push_back(std::move(rec));
    pos = end + sep.size();
  }
  return out;
}

}  // namespace learnfuzz::corpus

#endif  // LEARNFUZZ_CORPUS_HPP_
