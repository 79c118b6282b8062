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

#ifndef LEARNFUZZ_PDF_PARSER_HPP_
#define LEARNFUZZ_PDF_PARSER_HPP_

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "learnfuzz/pdf/coverage.hpp"
#include "learnfuzz/pdf/lexer.hpp"
#include "learnfuzz/pdf/value.hpp"

namespace learnfuzz::pdf {

enum class ParseError {
  none,
  lex_error,
  missing_obj_keyword,
  missing_endobj,
  bad_dict_key,
  unbalanced_delimiter,
  depth_exceeded,
  token_budget_exceeded,
  trailing_garbage,
  unexpected_token,
};

constexpr std::string_view to_string(ParseError e) {
  switch (e) {
    case ParseError::none: return "none";
    case ParseError::lex_error: return "lex-error";
    case ParseError::missing_obj_keyword: return "missing-obj-keyword";
    case ParseError::missing_endobj: return "missing-endobj";
    case ParseError::bad_dict_key: return "bad-dict-key";
    case ParseError::unbalanced_delimiter: return "unbalanced-delimiter";
    case ParseError::depth_exceeded: return "depth-exceeded";
    case ParseError::token_budget_exceeded: return "token-budget-exceeded";
    case ParseError::trailing_garbage: return "trailing-garbage";
    case ParseError::unexpected_token: return "unexpected-token";
  }
  return "unknown";
}

struct ParseOptions {
  // Require the "<id> <gen>" header; otherwise a bare "obj ..." is accepted.
  bool strict = true;
  std::size_t max_depth = 64;
  std::size_t token_budget = 1'000'000;
};

struct ParseOutcome {
  bool pass = false;
  ParseError error = ParseError::none;
  std::string message;
  std::size_t offset = 0;
  std::optional<PdfValue> value;
  std::optional<std::uint64_t> object_id;
  std::optional<std::uint64_t> generation;
  CoverageSet coverage;
};

namespace detail {

// Validation of well-known dictionary entries. Never fails a parse; it only
// adds coverage, the way a real consumer walks different code for
// different object types.
class SemanticChecker {
 public:
  explicit SemanticChecker(CoverageRecorder& cov) : cov_(cov) {}

  void check_dict(const Dict& dict) {
    for (const auto& [key, value] : dict.entries) {
      const auto id = key_point(key);
      hit(id == 0 ? 58 : id);
    }
    if (const auto* type = dict.find("Type")) {
      if (const auto* name = type->get_if<Name>()) {
        hit(type_point(name->text));
      } else {
        hit(56);
      }
    }
    if (const auto* sub = dict.find("Subtype")) {
      if (const auto* name = sub->get_if<Name>()) {
        if (name->text == "Type1") hit(68);
        else if (name->text == "TrueType") hit(69);
        else if (name->text == "Link") hit(70);
        else if (name->text == "Text") hit(71);
      }
    }
    const PdfValue* count = dict.find("Count");
    const PdfValue* kids = dict.find("Kids");
    if (count) {
      const auto* n = count->get_if<Number>();
      if (!n || !is_integral(n->value)) {
        hit(51);
      } else if (n->value < 0) {
        hit(61);
      }
    }
    if (kids) {
      if (const auto* arr = kids->get_if<Array>()) {
        for (const auto& k : arr->items) {
          if (!k.is<Ref>()) {
            hit(53);
            break;
          }
        }
        if (count) {
          const auto* n = count->get_if<Number>();
          if (n && n->value == static_cast<double>(arr->items.size())) hit(62);
          else hit(63);
        }
      } else {
        hit(52);
      }
    }
    check_rect(dict.find("MediaBox"), 54);
    check_rect(dict.find("Rect"), 60);
    if (const auto* parent = dict.find("Parent"); parent && !parent->is<Ref>()) {
      hit(55);
    }
    if (const auto* size = dict.find("Size"); size && !is_integer(*size)) {
      hit(57);
    }
    if (const auto* title = dict.find("Title");
        title && !title->is<LiteralString>() && !title->is<HexString>()) {
      hit(59);
    }
    if (const auto* rot = dict.find("Rotate")) {
      const auto* n = rot->get_if<Number>();
      if (!n || !is_integral(n->value) || std::fmod(n->value, 90.0) != 0.0) {
        hit(64);
      }
    }
    if (const auto* widths = dict.find("Widths")) {
      if (const auto* arr = widths->get_if<Array>()) {
        bool all_numbers = true;
        for (const auto& w : arr->items) all_numbers &= w.is<Number>();
        if (all_numbers) hit(65);
      }
    }
    const auto* first = dict.find("FirstChar");
    const auto* last = dict.find("LastChar");
    if (first && last && first->is<Number>() && last->is<Number>() &&
        first->as<Number>().value > last->as<Number>().value) {
      hit(66);
    }
    if (const auto* dest = dict.find("Dest"); dest && dest->is<Array>()) {
      hit(67);
    }
    for (std::string_view date_key : {"CreationDate", "ModDate"}) {
      if (const auto* d = dict.find(date_key)) {
        const auto* s = d->get_if<LiteralString>();
        if (s && s->bytes.rfind("D:", 0) == 0) hit(72);
        else hit(73);
      }
    }
  }

 private:
  void hit(std::uint16_t id) { cov_.hit(Unit::semantic, id); }

  static bool is_integral(double v) {
    return std::isfinite(v) && std::floor(v) == v;
  }

  static bool is_integer(const PdfValue& v) {
    const auto* n = v.get_if<Number>();
    return n && is_integral(n->value);
  }

  void check_rect(const PdfValue* v, std::uint16_t bad_point) {
    if (!v) return;
    const auto* arr = v->get_if<Array>();
    bool ok = arr && arr->items.size() == 4;
    if (ok) {
      for (const auto& x : arr->items) ok &= x.is<Number>();
    }
    if (!ok) hit(bad_point);
  }

  static std::uint16_t key_point(std::string_view key) {
    static constexpr std::string_view kKeys[] = {
        "Type",     "Subtype",      "Kids",      "Count",     "Parent",
        "MediaBox", "CropBox",      "Resources", "Font",      "BaseFont",
        "Encoding", "FirstChar",    "LastChar",  "Widths",    "Title",
        "Dest",     "Next",         "Prev",      "First",     "Last",
        "Root",     "Info",         "Size",      "Pages",     "Contents",
        "Annots",   "Rect",         "Border",    "Producer",  "Creator",
        "Author",   "CreationDate", "ModDate",   "Outlines",  "ProcSet",
        "Rotate",   "Length",       "Flags",     "FontName",  "ItalicAngle",
    };
    for (std::size_t i = 0; i < std::size(kKeys); ++i) {
      if (kKeys[i] == key) return static_cast<std::uint16_t>(i + 1);
    }
    return 0;
  }

  static std::uint16_t type_point(std::string_view type) {
    static constexpr std::string_view kTypes[] = {
        "Catalog", "Pages",  "Page",           "Font",    "Annot",
        "Outlines", "FontDescriptor", "XObject", "Action",
    };
    for (std::size_t i = 0; i < std::size(kTypes); ++i) {
      if (kTypes[i] == type) return static_cast<std::uint16_t>(81 + i);
    }
    return 90;
  }

  CoverageRecorder& cov_;
};

}  // namespace detail

/// Recursive-descent parser for PDF data objects. Total on arbitrary input:
/// nesting is bounded by max_depth and work by token_budget.
class ObjectParser {
 public:
  ObjectParser(std::string_view text, CoverageRecorder& cov,
               const ParseOptions& options, std::size_t pos = 0)
      : text_(text), cov_(cov), options_(options), lexer_(text, cov, pos),
        semantic_(cov) {}

  ParseOutcome parse_object() {
    hit(1);
    ParseOutcome out;
    if (!parse_header(out)) return finish(out);
    auto value = parse_value(0);
    if (!value) return finish(out);
    const Token* end = peek(0);
    if (!end) return finish(out);
    if (end->kind != TokenKind::kw_endobj) {
      if (end->kind == TokenKind::eof) {
        hit(40);
        set_error(ParseError::missing_endobj, end->offset, "expected endobj");
      } else if (end->kind == TokenKind::array_close ||
                 end->kind == TokenKind::dict_close) {
        hit(34);
        set_error(ParseError::unbalanced_delimiter, end->offset,
                  "unmatched closing delimiter");
      } else {
        hit(41);
        set_error(ParseError::missing_endobj, end->offset,
                  "expected endobj after object value");
      }
      return finish(out);
    }
    take();
    const Token* trailing = peek(0);
    if (!trailing) return finish(out);
    if (trailing->kind != TokenKind::eof) {
      hit(42);
      set_error(ParseError::trailing_garbage, trailing->offset,
                "data after endobj");
      return finish(out);
    }
    if (comment_after(lexer_.position())) hit(63);
    if (value->is<Dict>()) hit(59);
    else if (value->is<Array>()) hit(60);
    else hit(61);
    hit(43);
    out.pass = true;
    out.value = std::move(value);
    return finish(out);
  }

  // Parses a single value starting at the construction offset. Used for
  // trailer dictionaries inside host files.
  std::optional<PdfValue> parse_single_value() { return parse_value(0); }

  ParseError error() const { return error_; }
  std::size_t error_offset() const { return error_offset_; }
  const std::string& error_message() const { return error_message_; }
  // Offset just past the last consumed token.
  std::size_t consumed_until() const { return consumed_until_; }

 private:
  void hit(std::uint16_t id) { cov_.hit(Unit::parser, id); }

  void set_error(ParseError e, std::size_t offset, std::string message) {
    if (error_ != ParseError::none) return;
    error_ = e;
    error_offset_ = offset;
    error_message_ = std::move(message);
  }

  ParseOutcome& finish(ParseOutcome& out) {
    if (!out.pass) {
      out.error = error_;
      out.offset = std::min(error_offset_, text_.size());
      out.message = error_message_.empty() ? std::string(to_string(error_))
                                           : error_message_;
    }
    return out;
  }

  bool comment_after(std::size_t pos) const {
    return text_.substr(std::min(pos, text_.size())).find('%') !=
           std::string_view::npos;
  }

  // Returns nullptr on lexical failure or exhausted budget.
  const Token* peek(std::size_t k) {
    while (lookahead_.size() <= k) {
      if (!lookahead_.empty() && lookahead_.back().kind == TokenKind::eof) {
        return &lookahead_.back();
      }
      if (++tokens_lexed_ > options_.token_budget) {
        hit(39);
        set_error(ParseError::token_budget_exceeded, lexer_.position(),
                  "token budget exceeded");
        return nullptr;
      }
      Token t;
      if (!lexer_.next(t)) {
        hit(44);
        set_error(ParseError::lex_error, lexer_.error().offset,
                  lexer_.error().message);
        return nullptr;
      }
      lookahead_.push_back(std::move(t));
    }
    return &lookahead_[k];
  }

  Token take() {
    Token t = std::move(lookahead_.front());
    lookahead_.pop_front();
    consumed_until_ = lookahead_.empty() ? lexer_.position()
                                         : lookahead_.front().offset;
    return t;
  }

  static bool is_nonneg_int(const Token& t) {
    return t.kind == TokenKind::integer && t.integer >= 0;
  }

  bool parse_header(ParseOutcome& out) {
    hit(options_.strict ? 2 : 3);
    const Token* first = peek(0);
    if (!first) return false;
    if (!options_.strict && first->kind == TokenKind::kw_obj) {
      take();
      return true;
    }
    if (first->kind != TokenKind::integer) {
      hit(5);
      hit(7);
      set_error(ParseError::missing_obj_keyword, first->offset,
                "expected object number");
      return false;
    }
    const Token* second = peek(1);
    if (!second) return false;
    const Token* third = peek(2);
    if (!third) return false;
    if (!is_nonneg_int(*first) || !is_nonneg_int(*second)) {
      hit(6);
      hit(7);
      set_error(ParseError::missing_obj_keyword, first->offset,
                "object number and generation must be non-negative integers");
      return false;
    }
    if (third->kind != TokenKind::kw_obj) {
      hit(7);
      set_error(ParseError::missing_obj_keyword, third->offset,
                "expected 'obj'");
      return false;
    }
    out.object_id = static_cast<std::uint64_t>(first->integer);
    out.generation = static_cast<std::uint64_t>(second->integer);
    take();
    take();
    take();
    hit(4);
    return true;
  }

  std::optional<PdfValue> parse_value(std::size_t depth) {
    hit(8);
    if (depth > options_.max_depth) {
      hit(38);
      const Token* t = peek(0);
      set_error(ParseError::depth_exceeded, t ? t->offset : lexer_.position(),
                "nesting depth limit exceeded");
      return std::nullopt;
    }
    if (depth >= 4) hit(45);
    if (depth >= 8) hit(46);
    const Token* t = peek(0);
    if (!t) return std::nullopt;
    switch (t->kind) {
      case TokenKind::integer:
        return parse_integer_or_ref();
      case TokenKind::real: {
        hit(10);
        if (t->number < 0) hit(47);
        const double v = take().number;
        return PdfValue(Number{v});
      }
      case TokenKind::literal_string: {
        hit(13);
        Token s = take();
        if (s.text.empty()) hit(51);
        if (s.text.size() > 64) hit(53);
        return PdfValue(LiteralString{std::move(s.text)});
      }
      case TokenKind::hex_string:
        hit(14);
        return PdfValue(HexString{take().text});
      case TokenKind::name: {
        hit(15);
        Token n = take();
        if (n.text.empty()) hit(52);
        return PdfValue(Name{std::move(n.text)});
      }
      case TokenKind::kw_true:
        hit(16);
        take();
        return PdfValue(Boolean{true});
      case TokenKind::kw_false:
        hit(17);
        take();
        return PdfValue(Boolean{false});
      case TokenKind::kw_null:
        hit(18);
        take();
        return PdfValue(Null{});
      case TokenKind::array_open:
        return parse_array(depth);
      case TokenKind::dict_open:
        return parse_dict(depth);
      case TokenKind::array_close:
      case TokenKind::dict_close:
        hit(34);
        set_error(ParseError::unbalanced_delimiter, t->offset,
                  "unmatched closing delimiter");
        return std::nullopt;
      case TokenKind::kw_ref:
        hit(35);
        set_error(ParseError::unexpected_token, t->offset,
                  "'R' without object reference");
        return std::nullopt;
      case TokenKind::kw_obj:
        hit(36);
        set_error(ParseError::unexpected_token, t->offset,
                  "unexpected 'obj'");
        return std::nullopt;
      case TokenKind::kw_endobj:
        hit(37);
        set_error(ParseError::unexpected_token, t->offset,
                  "expected a value before endobj");
        return std::nullopt;
      case TokenKind::eof:
        hit(62);
        set_error(ParseError::unexpected_token, t->offset,
                  "unexpected end of input, expected a value");
        return std::nullopt;
    }
    return std::nullopt;
  }

  std::optional<PdfValue> parse_integer_or_ref() {
    const Token* first = peek(0);
    if (is_nonneg_int(*first)) {
      const Token* second = peek(1);
      if (!second) return std::nullopt;
      if (is_nonneg_int(*second)) {
        const Token* third = peek(2);
        if (!third) return std::nullopt;
        if (third->kind == TokenKind::kw_ref) {
          hit(11);
          const auto id = static_cast<std::uint64_t>(take().integer);
          const auto gen = static_cast<std::uint64_t>(take().integer);
          take();
          if (id == 0) hit(50);
          return PdfValue(Ref{id, gen});
        }
        hit(12);
      }
    }
    hit(9);
    const Token t = take();
    if (t.integer < 0) hit(47);
    if (t.integer == 0) hit(48);
    if (t.integer > 2147483647LL || t.integer < -2147483648LL) hit(49);
    return PdfValue(Number{t.number});
  }

  std::optional<PdfValue> parse_array(std::size_t depth) {
    hit(19);
    take();
    Array arr;
    while (true) {
      const Token* t = peek(0);
      if (!t) return std::nullopt;
      if (t->kind == TokenKind::array_close) {
        take();
        break;
      }
      if (t->kind == TokenKind::kw_endobj || t->kind == TokenKind::eof) {
        hit(30);
        set_error(ParseError::unbalanced_delimiter, t->offset,
                  "array not closed");
        return std::nullopt;
      }
      if (t->kind == TokenKind::dict_close) {
        hit(33);
        set_error(ParseError::unbalanced_delimiter, t->offset,
                  "'>>' inside array");
        return std::nullopt;
      }
      if (t->kind == TokenKind::array_open) hit(21);
      auto v = parse_value(depth + 1);
      if (!v) return std::nullopt;
      arr.items.push_back(std::move(*v));
    }
    if (arr.items.empty()) hit(20);
    if (arr.items.size() > 8) hit(22);
    bool all_numbers = !arr.items.empty();
    std::set<std::size_t> kinds;
    for (const auto& item : arr.items) {
      all_numbers &= item.is<Number>();
      kinds.insert(item.v.index());
    }
    if (all_numbers) hit(54);
    if (kinds.size() >= 3) hit(55);
    return PdfValue(std::move(arr));
  }

  std::optional<PdfValue> parse_dict(std::size_t depth) {
    hit(23);
    take();
    Dict dict;
    while (true) {
      const Token* t = peek(0);
      if (!t) return std::nullopt;
      if (t->kind == TokenKind::dict_close) {
        take();
        break;
      }
      if (t->kind == TokenKind::kw_endobj || t->kind == TokenKind::eof) {
        hit(31);
        set_error(ParseError::unbalanced_delimiter, t->offset,
                  "dictionary not closed");
        return std::nullopt;
      }
      if (t->kind == TokenKind::array_close) {
        hit(32);
        set_error(ParseError::unbalanced_delimiter, t->offset,
                  "']' inside dictionary");
        return std::nullopt;
      }
      if (t->kind != TokenKind::name) {
        hit(28);
        set_error(ParseError::bad_dict_key, t->offset,
                  "dictionary key must be a name");
        return std::nullopt;
      }
      std::string key = take().text;
      const Token* vt = peek(0);
      if (!vt) return std::nullopt;
      if (vt->kind == TokenKind::dict_close) {
        hit(29);
        set_error(ParseError::unexpected_token, vt->offset,
                  "dictionary key without value");
        return std::nullopt;
      }
      if (vt->kind == TokenKind::dict_open) hit(25);
      auto v = parse_value(depth + 1);
      if (!v) return std::nullopt;
      if (v->is<Ref>()) hit(56);
      if (v->is<Array>()) hit(57);
      if (v->is<Dict>()) hit(58);
      if (dict.entries.count(key)) hit(27);
      dict.entries[std::move(key)] = std::move(*v);
    }
    if (dict.entries.empty()) hit(24);
    if (dict.entries.size() > 8) hit(26);
    semantic_.check_dict(dict);
    return PdfValue(std::move(dict));
  }

  std::string_view text_;
  CoverageRecorder& cov_;
  ParseOptions options_;
  Lexer lexer_;
  detail::SemanticChecker semantic_;
  std::deque<Token> lookahead_;
  std::size_t tokens_lexed_ = 0;
  std::size_t consumed_until_ = 0;
  ParseError error_ = ParseError::none;
  std::size_t error_offset_ = 0;
  std::string error_message_;
};

inline ParseOutcome parse_object(std::string_view text,
                                 const ParseOptions& options = {}) {
  CoverageRecorder cov;
  ObjectParser parser(text, cov, options);
  ParseOutcome out = parser.parse_object();
  out.coverage = cov.to_set();
  return out;
}

}  // namespace learnfuzz::pdf

#endif  // LEARNFUZZ_PDF_PARSER_HPP_
