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

#ifndef LEARNFUZZ_PDF_LEXER_HPP_
#define LEARNFUZZ_PDF_LEXER_HPP_

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "learnfuzz/pdf/coverage.hpp"
#include "learnfuzz/pdf/value.hpp"

namespace learnfuzz::pdf {

enum class TokenKind {
  integer,
  real,
  literal_string,
  hex_string,
  name,
  dict_open,
  dict_close,
  array_open,
  array_close,
  kw_obj,
  kw_endobj,
  kw_ref,  // "R"
  kw_true,
  kw_false,
  kw_null,
  eof,
};

struct Token {
  TokenKind kind = TokenKind::eof;
  std::size_t offset = 0;
  std::int64_t integer = 0;  // integer tokens
  double number = 0.0;       // integer and real tokens
  std::string text;          // decoded bytes for strings and names
};

struct LexError {
  std::size_t offset = 0;
  std::string message;
};

/// Streaming PDF tokenizer over Latin-1 text. Comments and whitespace are
/// skipped; every token records its byte offset in the underlying text.
class Lexer {
 public:
  Lexer(std::string_view text, CoverageRecorder& cov, std::size_t pos = 0)
      : text_(text), cov_(cov), pos_(pos) {}

  // Fills `out` and returns true, or sets error() and returns false.
  bool next(Token& out) {
    hit(1);
    skip_whitespace_and_comments();
    out = Token{};
    out.offset = pos_;
    if (pos_ >= text_.size()) {
      hit(4);
      out.kind = TokenKind::eof;
      return true;
    }
    const unsigned char c = at(pos_);
    switch (c) {
      case '(':
        return lex_literal(out);
      case '<':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '<') {
          hit(42);
          pos_ += 2;
          out.kind = TokenKind::dict_open;
          return true;
        }
        return lex_hex(out);
      case '>':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          hit(43);
          pos_ += 2;
          out.kind = TokenKind::dict_close;
          return true;
        }
        hit(46);
        return fail(pos_, "bare delimiter '>'");
      case '[':
        hit(44);
        ++pos_;
        out.kind = TokenKind::array_open;
        return true;
      case ']':
        hit(45);
        ++pos_;
        out.kind = TokenKind::array_close;
        return true;
      case ')':
        hit(47);
        return fail(pos_, "bare delimiter ')'");
      case '{':
      case '}':
        hit(48);
        return fail(pos_, "bare delimiter '{' or '}'");
      case '/':
        return lex_name(out);
      default:
        return lex_regular(out);
    }
  }

  const LexError& error() const { return error_; }
  std::size_t position() const { return pos_; }
  void seek(std::size_t pos) { pos_ = pos; }

  void skip_whitespace_and_comments() {
    while (pos_ < text_.size()) {
      const unsigned char c = at(pos_);
      if (detail::is_pdf_whitespace(c)) {
        hit(2);
        if (c == 0x00) hit(58);
        if (c == 0x0C) hit(59);
        if (c == 0x0D) hit(60);
        ++pos_;
      } else if (c == '%') {
        hit(3);
        while (pos_ < text_.size() && text_[pos_] != '\n' &&
               text_[pos_] != '\r') {
          ++pos_;
        }
        if (pos_ >= text_.size()) hit(54);
      } else {
        break;
      }
    }
  }

 private:
  unsigned char at(std::size_t i) const {
    return static_cast<unsigned char>(text_[i]);
  }
  void hit(std::uint16_t id) { cov_.hit(Unit::lexer, id); }

  bool fail(std::size_t offset, std::string message) {
    error_ = LexError{offset, std::move(message)};
    return false;
  }

  static int hex_value(unsigned char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  }

  bool lex_literal(Token& out) {
    hit(25);
    const std::size_t start = pos_;
    ++pos_;
    int depth = 1;
    std::string bytes;
    while (pos_ < text_.size()) {
      const unsigned char c = at(pos_);
      if (c >= 0x80) hit(51);
      if (c == '(') {
        hit(26);
        ++depth;
        bytes += static_cast<char>(c);
        ++pos_;
      } else if (c == ')') {
        if (--depth == 0) {
          ++pos_;
          out.kind = TokenKind::literal_string;
          out.text = std::move(bytes);
          return true;
        }
        bytes += static_cast<char>(c);
        ++pos_;
      } else if (c == '\\') {
        ++pos_;
        if (pos_ >= text_.size()) {
          hit(53);
          break;
        }
        const unsigned char e = at(pos_);
        switch (e) {
          case 'n': hit(27); bytes += '\n'; ++pos_; break;
          case 'r': hit(28); bytes += '\r'; ++pos_; break;
          case 't': hit(29); bytes += '\t'; ++pos_; break;
          case 'b': hit(30); bytes += '\b'; ++pos_; break;
          case 'f': hit(31); bytes += '\f'; ++pos_; break;
          case '(':
          case ')':
          case '\\':
            hit(32);
            bytes += static_cast<char>(e);
            ++pos_;
            break;
          case '\r':
            hit(34);
            ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '\n') ++pos_;
            break;
          case '\n':
            hit(34);
            ++pos_;
            break;
          default:
            if (e >= '0' && e <= '7') {
              hit(33);
              int value = 0;
              for (int k = 0; k < 3 && pos_ < text_.size() && at(pos_) >= '0' &&
                              at(pos_) <= '7';
                   ++k) {
                value = value * 8 + (at(pos_) - '0');
                ++pos_;
              }
              bytes += static_cast<char>(value & 0xFF);
            } else {
              // Unknown escape: the backslash is dropped.
              hit(35);
              bytes += static_cast<char>(e);
              ++pos_;
            }
        }
      } else {
        if (c == '\n' || c == '\r') hit(50);
        bytes += static_cast<char>(c);
        ++pos_;
      }
    }
    hit(36);
    return fail(start, "unterminated literal string");
  }

  bool lex_hex(Token& out) {
    hit(37);
    const std::size_t start = pos_;
    ++pos_;
    std::string bytes;
    int pending = -1;
    while (pos_ < text_.size()) {
      const unsigned char c = at(pos_);
      if (c == '>') {
        ++pos_;
        if (pending >= 0) {
          hit(38);
          bytes += static_cast<char>(pending << 4);
        }
        out.kind = TokenKind::hex_string;
        out.text = std::move(bytes);
        return true;
      }
      if (detail::is_pdf_whitespace(c)) {
        hit(39);
        ++pos_;
        continue;
      }
      const int v = hex_value(c);
      if (v < 0) {
        hit(40);
        return fail(pos_, "bad hex digit in hex string");
      }
      if (pending < 0) {
        pending = v;
      } else {
        bytes += static_cast<char>((pending << 4) | v);
        pending = -1;
      }
      ++pos_;
    }
    hit(41);
    return fail(start, "unterminated hex string");
  }

  bool lex_name(Token& out) {
    hit(21);
    ++pos_;
    std::string name;
    while (pos_ < text_.size() && detail::is_regular(at(pos_))) {
      const unsigned char c = at(pos_);
      if (c == '#') {
        if (pos_ + 2 < text_.size() && hex_value(at(pos_ + 1)) >= 0 &&
            hex_value(at(pos_ + 2)) >= 0) {
          hit(22);
          const int v = hex_value(at(pos_ + 1)) * 16 + hex_value(at(pos_ + 2));
          if (v >= 0x80) hit(52);
          name += static_cast<char>(v);
          pos_ += 3;
          continue;
        }
        hit(23);
        return fail(pos_, "bad #xx escape in name");
      }
      name += static_cast<char>(c);
      ++pos_;
    }
    if (name.empty()) hit(24);
    out.kind = TokenKind::name;
    out.text = std::move(name);
    return true;
  }

  bool lex_regular(Token& out) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && detail::is_regular(at(pos_))) ++pos_;
    const std::string_view run = text_.substr(start, pos_ - start);
    if (run.size() > 255) hit(55);

    const unsigned char first = static_cast<unsigned char>(run[0]);
    if ((first >= '0' && first <= '9') || first == '+' || first == '-' ||
        first == '.') {
      return lex_number(run, start, out);
    }
    static constexpr struct {
      std::string_view word;
      TokenKind kind;
      std::uint16_t point;
    } kKeywords[] = {
        {"obj", TokenKind::kw_obj, 14},   {"endobj", TokenKind::kw_endobj, 15},
        {"R", TokenKind::kw_ref, 16},     {"true", TokenKind::kw_true, 17},
        {"false", TokenKind::kw_false, 18}, {"null", TokenKind::kw_null, 19},
    };
    for (const auto& kw : kKeywords) {
      if (run == kw.word) {
        hit(kw.point);
        out.kind = kw.kind;
        return true;
      }
    }
    hit(20);
    return fail(start, "unknown keyword '" + std::string(run.substr(0, 32)) +
                           "'");
  }

  bool lex_number(std::string_view run, std::size_t start, Token& out) {
    std::size_t i = 0;
    bool negative = false;
    if (run[i] == '+' || run[i] == '-') {
      hit(run[i] == '-' ? 6 : 7);
      negative = run[i] == '-';
      ++i;
    }
    const std::size_t int_begin = i;
    while (i < run.size() && run[i] >= '0' && run[i] <= '9') ++i;
    const std::string_view int_part = run.substr(int_begin, i - int_begin);
    bool has_dot = false;
    std::string_view frac_part;
    if (i < run.size() && run[i] == '.') {
      has_dot = true;
      ++i;
      const std::size_t frac_begin = i;
      while (i < run.size() && run[i] >= '0' && run[i] <= '9') ++i;
      frac_part = run.substr(frac_begin, i - frac_begin);
    }
    if (int_part.empty() && frac_part.empty()) {
      hit(57);
      return fail(start, "sign or dot without digits");
    }
    if (i != run.size()) {
      if (run[i] == 'e' || run[i] == 'E') {
        hit(13);
        return fail(start, "exponent in number");
      }
      hit(56);
      return fail(start, "malformed number");
    }

    if (!has_dot) {
      std::int64_t value = 0;
      auto res = std::from_chars(int_part.data(),
                                 int_part.data() + int_part.size(), value);
      if (res.ec == std::errc{} && res.ptr == int_part.data() + int_part.size()) {
        hit(5);
        out.kind = TokenKind::integer;
        out.integer = negative ? -value : value;
        out.number = static_cast<double>(out.integer);
        return true;
      }
      hit(11);
    } else {
      hit(8);
      if (int_part.empty()) hit(9);
      if (frac_part.empty()) hit(10);
    }

    std::string normalized;
    if (negative) normalized += '-';
    normalized += int_part.empty() ? std::string_view("0") : int_part;
    normalized += '.';
    normalized += frac_part.empty() ? std::string_view("0") : frac_part;
    double value = 0.0;
    auto res = std::from_chars(normalized.data(),
                               normalized.data() + normalized.size(), value);
    if (res.ec != std::errc{}) {
      hit(12);
      return fail(start, "number out of range");
    }
    out.kind = TokenKind::real;
    out.number = value;
    return true;
  }

  std::string_view text_;
  CoverageRecorder& cov_;
  std::size_t pos_;
  LexError error_;
};

struct TokenizeResult {
  std::vector<Token> tokens;
  std::optional<LexError> error;
  CoverageSet coverage;
};

inline TokenizeResult tokenize(std::string_view text) {
  TokenizeResult result;
  CoverageRecorder cov;
  Lexer lexer(text, cov);
  Token tok;
  while (true) {
    if (!lexer.next(tok)) {
      result.error = lexer.error();
      break;
    }
    if (tok.kind == TokenKind::eof) break;
    result.tokens.push_back(std::move(tok));
  }
  result.coverage = cov.to_set();
  return result;
}

}  // namespace learnfuzz::pdf

#endif  // LEARNFUZZ_PDF_LEXER_HPP_
