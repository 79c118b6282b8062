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

// Reader for the small TOML subset used by campaign files: comments,
// "key = value" pairs, [table] and [[array.of.tables]] headers, dotted
// headers below the last array element, and values that are basic strings,
// integers, floats, booleans or single-line arrays of those.

#ifndef LEARNFUZZ_TOOLS_TOML_LITE_HPP_
#define LEARNFUZZ_TOOLS_TOML_LITE_HPP_

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "learnfuzz/error.hpp"

namespace toml_lite {

using nlohmann::json;

namespace detail {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  json run() {
    json root = json::object();
    json* table = &root;
    while (pos_ < text_.size()) {
      skip_blank();
      if (pos_ >= text_.size()) break;
      const char c = text_[pos_];
      if (c == '\n') {
        ++pos_;
        ++line_;
        continue;
      }
      if (c == '#') {
        skip_comment();
        continue;
      }
      if (c == '[') {
        table = header(root);
      } else {
        key_value(*table);
      }
      end_of_line();
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw learnfuzz::Error(learnfuzz::Errc::invalid_config,
                           "config line " + std::to_string(line_) + ": " + what);
  }

  void skip_blank() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  void skip_comment() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
  }

  void end_of_line() {
    skip_blank();
    if (pos_ < text_.size() && text_[pos_] == '#') skip_comment();
    if (pos_ < text_.size()) {
      if (text_[pos_] != '\n') fail("unexpected text after value");
      ++pos_;
      ++line_;
    }
  }

  std::string bare_key() {
    skip_blank();
    if (pos_ < text_.size() && text_[pos_] == '"') return basic_string();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_' || text_[pos_] == '-')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a key");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<std::string> dotted_key() {
    std::vector<std::string> parts{bare_key()};
    skip_blank();
    while (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      parts.push_back(bare_key());
      skip_blank();
    }
    return parts;
  }

  json* header(json& root) {
    const bool array = text_.substr(pos_, 2) == "[[";
    pos_ += array ? 2 : 1;
    const auto path = dotted_key();
    if (text_.substr(pos_, array ? 2 : 1) != (array ? "]]" : "]")) fail("unterminated header");
    pos_ += array ? 2 : 1;
    json* t = &root;
    for (std::size_t i = 0; i < path.size(); ++i) {
      json& next = (*t)[path[i]];
      const bool last = i + 1 == path.size();
      if (last && array) {
        if (next.is_null()) next = json::array();
        if (!next.is_array()) fail("'" + path[i] + "' is not an array of tables");
        next.push_back(json::object());
        return &next.back();
      }
      if (next.is_null()) next = json::object();
      if (next.is_array()) {
        if (next.empty()) fail("empty array of tables");
        t = &next.back();
      } else if (next.is_object()) {
        t = &next;
      } else {
        fail("'" + path[i] + "' is not a table");
      }
    }
    return t;
  }

  void key_value(json& table) {
    const auto path = dotted_key();
    skip_blank();
    if (pos_ >= text_.size() || text_[pos_] != '=') fail("expected '='");
    ++pos_;
    json* t = &table;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      json& next = (*t)[path[i]];
      if (next.is_null()) next = json::object();
      if (!next.is_object()) fail("'" + path[i] + "' is not a table");
      t = &next;
    }
    if (t->contains(path.back())) fail("duplicate key '" + path.back() + "'");
    (*t)[path.back()] = value();
  }

  std::string basic_string() {
    ++pos_;  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') fail("unterminated string");
      const char c = text_[pos_++];
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (pos_ >= text_.size()) fail("unterminated escape");
      switch (text_[pos_++]) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: fail("unsupported escape");
      }
    }
  }

  json value() {
    skip_blank();
    if (pos_ >= text_.size()) fail("missing value");
    const char c = text_[pos_];
    if (c == '"') return basic_string();
    if (c == '[') {
      ++pos_;
      json arr = json::array();
      while (true) {
        skip_blank();
        if (pos_ < text_.size() && text_[pos_] == ']') {
          ++pos_;
          return arr;
        }
        arr.push_back(value());
        skip_blank();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
        } else if (pos_ >= text_.size() || text_[pos_] != ']') {
          fail("expected ',' or ']'");
        }
      }
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != '#') {
      ++pos_;
    }
    std::string tok(text_.substr(start, pos_ - start));
    if (tok == "true") return true;
    if (tok == "false") return false;
    std::erase(tok, '_');
    std::int64_t i = 0;
    auto ri = std::from_chars(tok.data(), tok.data() + tok.size(), i);
    if (ri.ec == std::errc{} && ri.ptr == tok.data() + tok.size()) return i;
    double d = 0.0;
    auto rd = std::from_chars(tok.data(), tok.data() + tok.size(), d);
    if (rd.ec == std::errc{} && rd.ptr == tok.data() + tok.size() && !tok.empty()) return d;
    fail("cannot read value '" + tok + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace detail

/// Parses `text` into a JSON object tree. Throws Error(invalid_config).
inline json parse(std::string_view text) { return detail::Reader(text).run(); }

}  // namespace toml_lite

#endif  // LEARNFUZZ_TOOLS_TOML_LITE_HPP_
