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

#ifndef LEARNFUZZ_SYNTHETIC_HPP_
#define LEARNFUZZ_SYNTHETIC_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "learnfuzz/corpus.hpp"
#include "learnfuzz/rng.hpp"

namespace learnfuzz::corpus {

namespace detail {

class SyntheticWriter {
 public:
  explicit SyntheticWriter(Rng& rng) : rng_(rng) {}

  // Returns the value text and whether it should use the multi-line layout.
  std::string value(bool multiline) {
    multiline_ = multiline;
    const double u = uniform01(rng_);
    if (u < 0.12) return pages();
    if (u < 0.26) return page();
    if (u < 0.31) return catalog();
    if (u < 0.43) return font();
    if (u < 0.55) return number_array();
    if (u < 0.60) return literal();
    if (u < 0.63) return std::to_string(integer(1, 9999));
    if (u < 0.73) return mixed_array();
    if (u < 0.83) return outline();
    if (u < 0.91) return annotation();
    if (u < 0.97) return info();
    return uniform01(rng_) < 0.5 ? escaped_name() : ref();
  }

 private:
  template <std::size_t N>
  std::string_view pick(const std::array<std::string_view, N>& items) {
    return items[uniform_below(rng_, N)];
  }

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    uniform_below(rng_, static_cast<std::uint64_t>(hi - lo + 1)));
  }

  std::string ref() { return std::to_string(integer(1, 120)) + " 0 R"; }

  std::string number() {
    if (uniform01(rng_) < 0.5) return std::to_string(integer(0, 999));
    return std::to_string(integer(0, 999)) + "." +
           std::to_string(integer(0, 9));
  }

  std::string dict(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string out = multiline_ ? "<<\n" : "<< ";
    for (const auto& [k, v] : kv) {
      out += "/" + k + " " + v;
      out += multiline_ ? "\n" : " ";
    }
    out += ">>";
    return out;
  }

  std::string pages() {
    const auto kids = integer(1, 4);
    std::string arr = "[ ";
    for (std::int64_t i = 0; i < kids; ++i) arr += ref() + " ";
    arr += "]";
    return dict({{"Type", "/Pages"}, {"Kids", arr}, {"Count", std::to_string(kids)}});
  }

  std::string page() {
    static constexpr std::array<std::string_view, 3> kBoxes = {
        "[ 0 0 612 792 ]", "[ 0 0 595 842 ]", "[ 0 0 595.2 841.8 ]"};
    std::vector<std::pair<std::string, std::string>> kv{
        {"Type", "/Page"}, {"Parent", ref()}, {"MediaBox", std::string(pick(kBoxes))}};
    if (uniform01(rng_) < 0.7) kv.push_back({"Resources", ref()});
    if (uniform01(rng_) < 0.6) kv.push_back({"Contents", ref()});
    if (uniform01(rng_) < 0.2) kv.push_back({"Rotate", "90"});
    return dict(kv);
  }

  std::string catalog() {
    std::vector<std::pair<std::string, std::string>> kv{{"Type", "/Catalog"},
                                                        {"Pages", ref()}};
    if (uniform01(rng_) < 0.5) kv.push_back({"Outlines", ref()});
    return dict(kv);
  }

  std::string font() {
    static constexpr std::array<std::string_view, 6> kFonts = {
        "/Helvetica", "/Times-Roman", "/Courier", "/Helvetica-Bold",
        "/Symbol",    "/Times-Italic"};
    static constexpr std::array<std::string_view, 2> kSub = {"/Type1",
                                                             "/TrueType"};
    std::vector<std::pair<std::string, std::string>> kv{
        {"Type", "/Font"}, {"Subtype", std::string(pick(kSub))},
        {"BaseFont", std::string(pick(kFonts))}};
    if (uniform01(rng_) < 0.5) kv.push_back({"Encoding", "/WinAnsiEncoding"});
    if (uniform01(rng_) < 0.3) {
      kv.push_back({"FirstChar", "32"});
      kv.push_back({"LastChar", "126"});
      kv.push_back({"Widths", ref()});
    }
    return dict(kv);
  }

  std::string number_array() {
    const auto n = integer(2, 6);
    std::string out = "[";
    for (std::int64_t i = 0; i < n; ++i) {
      if (i) out += ' ';
      out += number();
    }
    out += "]";
    return out;
  }

  std::string words(std::int64_t lo, std::int64_t hi) {
    static constexpr std::array<std::string_view, 16> kWords = {
        "Related", "Work",    "Introduction", "Hello",   "Results",
        "Summary", "Chapter", "Appendix",     "Figure",  "Table",
        "Methods", "Data",    "Overview",     "Details", "Notes",
        "Index"};
    const auto n = integer(lo, hi);
    std::string out;
    for (std::int64_t i = 0; i < n; ++i) {
      if (i) out += ' ';
      out += pick(kWords);
    }
    return out;
  }

  std::string literal() { return "(" + words(1, 2) + ")"; }

  std::string escaped_name() {
    static constexpr std::array<std::string_view, 5> kNames = {
        "/My#20Name", "/Font#20Name", "/A#23B", "/Section#201", "/Name"};
    return std::string(pick(kNames));
  }

  std::string mixed_array() {
    const auto n = integer(2, 4);
    std::string out = "[";
    for (std::int64_t i = 0; i < n; ++i) {
      if (i) out += ' ';
      switch (uniform_below(rng_, 6)) {
        case 0: out += uniform01(rng_) < 0.5 ? "false" : "true"; break;
        case 1: out += std::to_string(integer(0, 999)); break;
        case 2: out += number(); break;
        case 3: out += literal(); break;
        case 4: out += escaped_name(); break;
        default: out += ref(); break;
      }
    }
    out += "]";
    return out;
  }

  std::string outline() {
    std::vector<std::pair<std::string, std::string>> kv{
        {"Title", literal()}, {"Parent", ref()}};
    if (uniform01(rng_) < 0.6) kv.push_back({"Next", ref()});
    if (uniform01(rng_) < 0.4) kv.push_back({"Prev", ref()});
    kv.push_back({"Dest", "[ " + ref() + " /XYZ 0 792 0 ]"});
    return dict(kv);
  }

  std::string annotation() {
    return dict({{"Type", "/Annot"},
                 {"Subtype", "/Link"},
                 {"Rect", "[ " + number() + " " + number() + " " + number() +
                              " " + number() + " ]"},
                 {"Border", "[ 0 0 0 ]"},
                 {"Dest", "[ " + ref() + " /Fit ]"}});
  }

  std::string info() {
    static constexpr std::array<std::string_view, 3> kProducers = {
        "(pdfTeX-1.40)", "(Acrobat Distiller)", "(LibreOffice)"};
    return dict({{"Producer", std::string(pick(kProducers))},
                 {"CreationDate",
                  "(D:20" + std::to_string(integer(10, 16)) + "0" +
                      std::to_string(integer(1, 9)) + "1" +
                      std::to_string(integer(0, 9)) + "120000)"}});
  }

  Rng& rng_;
  bool multiline_ = false;
};

}  // namespace detail

/// Seeded generator for a stream-free training corpus of small PDF objects:
/// page-tree dictionaries, fonts, outlines, annotations, numeric arrays,
/// literal strings, escaped names, references and multi-type arrays. Half of
/// the objects use the one-line "id 0 obj value endobj" layout, the rest put
/// the header, each dictionary entry, and endobj on separate lines.
inline std::vector<ObjectRecord> synthetic_corpus(std::size_t count,
                                                  std::uint64_t seed) {
  Rng rng = make_rng(seed, {0x53594e});
  detail::SyntheticWriter writer(rng);
  std::vector<ObjectRecord> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ObjectRecord rec;
    rec.object_id = i + 1;
    rec.generation = 0;
    rec.source = "synthetic";
    const bool multiline = uniform01(rng) < 0.5;
    const std::string value = writer.value(multiline);
    rec.body = std::to_string(rec.object_id) + " 0 obj" +
               (multiline ? "\n" : " ") + value + (multiline ? "\n" : " ") +
               "endobj";
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace learnfuzz::corpus

#endif  // LEARNFUZZ_SYNTHETIC_HPP_
