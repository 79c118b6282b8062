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

#ifndef LEARNFUZZ_PDF_VALUE_HPP_
#define LEARNFUZZ_PDF_VALUE_HPP_

#include <charconv>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace learnfuzz::pdf {

struct PdfValue;

struct Null {
  friend bool operator==(const Null&, const Null&) = default;
};
struct Boolean {
  bool value = false;
  friend bool operator==(const Boolean&, const Boolean&) = default;
};
struct Number {
  double value = 0.0;
  friend bool operator==(const Number&, const Number&) = default;
};
struct LiteralString {
  std::string bytes;
  friend bool operator==(const LiteralString&, const LiteralString&) = default;
};
struct HexString {
  std::string bytes;
  friend bool operator==(const HexString&, const HexString&) = default;
};
struct Name {
  std::string text;  // decoded, without the leading '/'
  friend bool operator==(const Name&, const Name&) = default;
};
struct Ref {
  std::uint64_t object_id = 0;
  std::uint64_t generation = 0;
  friend bool operator==(const Ref&, const Ref&) = default;
};
struct Array {
  std::vector<PdfValue> items;
  friend bool operator==(const Array&, const Array&);
};
struct Dict {
  std::map<std::string, PdfValue> entries;  // key: decoded name text

  const PdfValue* find(std::string_view key) const;
  friend bool operator==(const Dict&, const Dict&);
};

struct PdfValue {
  using Variant = std::variant<Null, Boolean, Number, LiteralString, HexString,
                               Name, Array, Dict, Ref>;
  Variant v;

  PdfValue() = default;
  template <typename T>
    requires std::is_constructible_v<Variant, T&&> &&
             (!std::is_same_v<std::remove_cvref_t<T>, PdfValue>)
  PdfValue(T&& x) : v(std::forward<T>(x)) {}

  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(v);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(v);
  }
  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&v);
  }

  friend bool operator==(const PdfValue& a, const PdfValue& b) {
    return a.v == b.v;
  }
};

inline bool operator==(const Array& a, const Array& b) {
  return a.items == b.items;
}
inline bool operator==(const Dict& a, const Dict& b) {
  return a.entries == b.entries;
}
inline const PdfValue* Dict::find(std::string_view key) const {
  auto it = entries.find(std::string(key));
  return it == entries.end() ? nullptr : &it->second;
}

namespace detail {

constexpr bool is_pdf_whitespace(unsigned char c) {
  return c == 0x00 || c == 0x09 || c == 0x0A || c == 0x0C || c == 0x0D ||
         c == 0x20;
}

constexpr bool is_pdf_delimiter(unsigned char c) {
  return c == '(' || c == ')' || c == '<' || c == '>' || c == '[' ||
         c == ']' || c == '{' || c == '}' || c == '/' || c == '%';
}

constexpr bool is_regular(unsigned char c) {
  return !is_pdf_whitespace(c) && !is_pdf_delimiter(c);
}

inline constexpr char kHexDigits[] = "0123456789ABCDEF";

inline void append_number(std::string& out, double value) {
  // Fixed notation only: the lexer rejects exponents.
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof(buf), value,
                           std::chars_format::fixed);
  if (res.ec != std::errc{}) {
    out += "0";
    return;
  }
  out.append(buf, res.ptr);
}

inline void append_name(std::string& out, std::string_view text) {
  out += '/';
  for (unsigned char c : text) {
    if (c >= 0x21 && c <= 0x7E && c != '#' && !is_pdf_delimiter(c)) {
      out += static_cast<char>(c);
    } else {
      out += '#';
      out += kHexDigits[c >> 4];
      out += kHexDigits[c & 0xF];
    }
  }
}

inline void append_literal(std::string& out, std::string_view bytes) {
  out += '(';
  for (unsigned char c : bytes) {
    switch (c) {
      case '(': out += "\\("; break;
      case ')': out += "\\)"; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20 || c >= 0x7F) {
          out += '\\';
          out += static_cast<char>('0' + ((c >> 6) & 7));
          out += static_cast<char>('0' + ((c >> 3) & 7));
          out += static_cast<char>('0' + (c & 7));
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += ')';
}

}  // namespace detail

inline void serialize(const PdfValue& value, std::string& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Null>) {
          out += "null";
        } else if constexpr (std::is_same_v<T, Boolean>) {
          out += x.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, Number>) {
          detail::append_number(out, x.value);
        } else if constexpr (std::is_same_v<T, LiteralString>) {
          detail::append_literal(out, x.bytes);
        } else if constexpr (std::is_same_v<T, HexString>) {
          out += '<';
          for (unsigned char c : x.bytes) {
            out += detail::kHexDigits[c >> 4];
            out += detail::kHexDigits[c & 0xF];
          }
          out += '>';
        } else if constexpr (std::is_same_v<T, Name>) {
          detail::append_name(out, x.text);
        } else if constexpr (std::is_same_v<T, Ref>) {
          out += std::to_string(x.object_id);
          out += ' ';
          out += std::to_string(x.generation);
          out += " R";
        } else if constexpr (std::is_same_v<T, Array>) {
          out += '[';
          for (std::size_t i = 0; i < x.items.size(); ++i) {
            if (i) out += ' ';
            serialize(x.items[i], out);
          }
          out += ']';
        } else if constexpr (std::is_same_v<T, Dict>) {
          out += "<<";
          bool first = true;
          for (const auto& [key, val] : x.entries) {
            if (!first) out += ' ';
            first = false;
            detail::append_name(out, key);
            out += ' ';
            serialize(val, out);
          }
          out += ">>";
        }
      },
      value.v);
}

inline std::string serialize(const PdfValue& value) {
  std::string out;
  serialize(value, out);
  return out;
}

/// Renders a complete indirect object: "<id> <gen> obj\n<value>\nendobj".
inline std::string serialize_object(std::uint64_t id, std::uint64_t generation,
                                    const PdfValue& value) {
  std::string out = std::to_string(id) + " " + std::to_string(generation) +
                    " obj\n";
  serialize(value, out);
  out += "\nendobj";
  return out;
}

}  // namespace learnfuzz::pdf

#endif  // LEARNFUZZ_PDF_VALUE_HPP_
