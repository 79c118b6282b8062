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

#ifndef LEARNFUZZ_ASSEMBLER_HPP_
#define LEARNFUZZ_ASSEMBLER_HPP_

#include <array>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "learnfuzz/error.hpp"
#include "learnfuzz/pdf/host.hpp"
#include "learnfuzz/pdf/value.hpp"

namespace learnfuzz::assembler {

struct HostFile {
  std::string name;
  std::string bytes;
  pdf::Trailer last_trailer;
  std::uint64_t last_object_id = 0;
  std::uint32_t last_generation = 0;

  // Throws Error(host_malformed) when the structural parse fails.
  static HostFile from_bytes(std::string bytes, std::string name = {}) {
    const pdf::HostParse parsed = pdf::parse_host(bytes);
    HostFile host;
    host.name = std::move(name);
    host.last_trailer = parsed.last_trailer();
    host.last_object_id = parsed.last_object_id;
    if (auto r = parsed.resolve(parsed.last_object_id)) {
      host.last_generation = r->entry.generation;
    }
    host.bytes = std::move(bytes);
    return host;
  }
};

namespace detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Returns the part of `body` that follows its "obj" keyword, or the whole
// body when the header is damaged. Leading "<id> <gen>" is dropped.
inline std::pair<std::string_view, bool> strip_header(std::string_view body) {
  std::size_t p = 0;
  auto skip_ws = [&] {
    while (p < body.size() &&
           pdf::detail::is_pdf_whitespace(static_cast<unsigned char>(body[p]))) {
      ++p;
    }
  };
  auto digits = [&] {
    const std::size_t s = p;
    while (p < body.size() && is_digit(body[p])) ++p;
    return p > s;
  };
  skip_ws();
  const std::size_t start = p;
  if (body.substr(p).starts_with("obj")) return {body.substr(p + 3), true};
  if (digits()) {
    const std::size_t after_id = p;
    skip_ws();
    if (p > after_id && digits()) {
      const std::size_t after_gen = p;
      skip_ws();
      if (p > after_gen && body.substr(p).starts_with("obj")) {
        return {body.substr(p + 3), true};
      }
    }
  }
  p = start;
  return {body, false};
}

inline std::string pad(std::uint64_t value, int width) {
  std::string s = std::to_string(value);
  if (static_cast<int>(s.size()) < width) {
    s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  }
  return s;
}

}  // namespace detail

/// Incremental update: appends a new body holding `object_body` under the
/// host's last object id with generation + 1, an xref section with a single
/// subsection for that id, and a trailer chained to the previous xref via
/// /Prev. The host bytes are copied unchanged as the prefix.
///
/// The appended object is not validated; only the presence of an "obj"
/// marker is required, so ill-formed objects still reach the object parser.
inline std::string append_object(const HostFile& host,
                                 std::string_view object_body) {
  if (object_body.find("obj") == std::string_view::npos) {
    throw Error(Errc::object_body_unusable,
                "object body has no obj/endobj markers");
  }
  const auto [rest, header_found] = detail::strip_header(object_body);
  const std::uint64_t id = host.last_object_id;
  const std::uint64_t gen = std::uint64_t{host.last_generation} + 1;

  std::string out = host.bytes;
  if (!out.empty() && out.back() != '\n' && out.back() != '\r') out += '\n';
  const std::size_t object_offset = out.size();
  out += std::to_string(id);
  out += ' ';
  out += std::to_string(gen);
  out += header_found ? " obj" : " ";
  out += rest;
  if (out.back() != '\n') out += '\n';

  const std::size_t xref_offset = out.size();
  out += "xref\n";
  out += std::to_string(id) + " 1\n";
  out += detail::pad(object_offset, 10) + " " + detail::pad(gen, 5) + " n\r\n";

  pdf::Dict trailer = host.last_trailer.dict;
  trailer.entries["Prev"] =
      pdf::Number{static_cast<double>(host.last_trailer.startxref)};
  out += "trailer\n";
  pdf::serialize(pdf::PdfValue(std::move(trailer)), out);
  out += "\nstartxref\n";
  out += std::to_string(xref_offset);
  out += "\n%%EOF\n";
  return out;
}

namespace detail {

// Writes stream-free fixture PDFs with exact xref offsets.
class FixtureWriter {
 public:
  explicit FixtureWriter(std::string_view header) : out_(header) {}

  void object(std::uint64_t id, std::uint32_t gen, std::string_view value) {
    offsets_.push_back({id, {out_.size(), gen}});
    out_ += std::to_string(id) + " " + std::to_string(gen) + " obj\n";
    out_ += value;
    out_ += "\nendobj\n";
  }

  // `ranges` lists (start, count) subsections; id 0 is written as the head
  // of the free list.
  std::size_t xref(const std::vector<std::pair<std::uint64_t, std::uint64_t>>&
                       ranges) {
    const std::size_t at = out_.size();
    out_ += "xref\n";
    for (const auto& [start, count] : ranges) {
      out_ += std::to_string(start) + " " + std::to_string(count) + "\n";
      for (std::uint64_t id = start; id < start + count; ++id) {
        if (id == 0) {
          out_ += "0000000000 65535 f\r\n";
          continue;
        }
        const auto* e = find(id);
        if (!e) {
          out_ += "0000000000 00000 f\r\n";
          continue;
        }
        out_ += pad(e->first, 10) + " " + pad(e->second, 5) + " n\r\n";
      }
    }
    offsets_.clear();
    return at;
  }

  void trailer(std::string_view dict, std::size_t xref_at) {
    out_ += "trailer\n";
    out_ += dict;
    out_ += "\nstartxref\n" + std::to_string(xref_at) + "\n%%EOF\n";
  }

  const std::string& bytes() const { return out_; }

 private:
  const std::pair<std::size_t, std::uint32_t>* find(std::uint64_t id) const {
    for (const auto& [oid, e] : offsets_) {
      if (oid == id) return &e;
    }
    return nullptr;
  }

  std::string out_;
  std::vector<std::pair<std::uint64_t, std::pair<std::size_t, std::uint32_t>>>
      offsets_;
};

}  // namespace detail

/// Three small, structurally distinct, stream-free hosts:
///  host1: one page, a single xref subsection (ids 0-5);
///  host2: two xref subsections with a gap in the id space;
///  host3: an incremental update linked through /Prev.
inline std::array<HostFile, 3> make_hosts() {
  detail::FixtureWriter h1("%PDF-1.4\n%\xE2\xE3\xCF\xD3\n");
  h1.object(1, 0, "<<\n/Type /Catalog\n/Pages 2 0 R\n>>");
  h1.object(2, 0, "<<\n/Type /Pages\n/Kids [ 3 0 R ]\n/Count 1\n>>");
  h1.object(3, 0,
            "<<\n/Type /Page\n/Parent 2 0 R\n/MediaBox [ 0 0 612 792 ]\n"
            "/Resources << /Font << /F1 4 0 R >> >>\n>>");
  h1.object(4, 0, "<<\n/Type /Font\n/Subtype /Type1\n/BaseFont /Helvetica\n>>");
  h1.object(5, 0,
            "<<\n/Title (Minimal host \\(one page\\))\n"
            "/Producer (learnfuzz\\040fixtures)\n"
            "/CreationDate (D:20260101000000Z)\n>>");
  const auto x1 = h1.xref({{0, 6}});
  h1.trailer("<<\n/Size 6\n/Root 1 0 R\n/Info 5 0 R\n>>", x1);

  detail::FixtureWriter h2("%PDF-1.5\n");
  h2.object(1, 0, "<< /Type /Catalog /Pages 2 0 R /Outlines 10 0 R >>");
  h2.object(2, 0, "<< /Type /Pages /Kids [ 3 0 R 4 0 R ] /Count 2 >>");
  h2.object(3, 0,
            "<< /Type /Page /Parent 2 0 R /MediaBox [ 0 0 595.28 841.89 ] "
            "/Rotate 90 >>");
  h2.object(4, 0,
            "<< /Type /Page /Parent 2 0 R /MediaBox [ 0 0 595.28 841.89 ] "
            "/Annots [ 12 0 R ] >>");
  h2.object(10, 0, "<< /Type /Outlines /First 11 0 R /Last 11 0 R /Count 1 >>");
  h2.object(11, 0,
            "<< /Title <FEFF0048006F007300740032> /Parent 10 0 R "
            "/Dest [ 3 0 R /Fit ] >>");
  h2.object(12, 0,
            "<< /Type /Annot /Subtype /Link /Rect [ 10 10 110 30 ] "
            "/Border [ 0 0 0 ] /A << /S /URI /URI (http://example.com/) >> "
            "/NM /Link#20One /Hidden false >>");
  const auto x2 = h2.xref({{0, 5}, {10, 3}});
  h2.trailer("<< /Size 13 /Root 1 0 R >>", x2);

  detail::FixtureWriter h3("%PDF-1.3\n");
  h3.object(1, 0, "<< /Type /Catalog /Pages 2 0 R >>");
  h3.object(2, 0, "<< /Type /Pages /Kids [ 3 0 R ] /Count 1 >>");
  h3.object(3, 0,
            "<< /Type /Page /Parent 2 0 R /MediaBox [ 0 0 612 792 ] "
            "/Resources 5 0 R /Contents null >>");
  h3.object(4, 0, "[ 1 2 3 ]");
  h3.object(5, 0, "<< /ProcSet [ /PDF /Text ] /Font << /F1 6 0 R >> >>");
  h3.object(6, 0,
            "<< /Type /Font /Subtype /TrueType /BaseFont /Arial "
            "/FirstChar 32 /LastChar 126 /Widths 4 0 R >>");
  const auto x3a = h3.xref({{0, 7}});
  h3.trailer("<< /Size 7 /Root 1 0 R >>", x3a);
  h3.object(4, 1, "[ -250.5 .5 3. 4 ] % widths patched");
  h3.object(7, 0,
            "<< /Author (Fixture Author) /ModDate (D:20260102) "
            "/Keywords [ true null ] >>");
  const auto x3b = h3.xref({{4, 1}, {7, 1}});
  h3.trailer("<< /Size 8 /Root 1 0 R /Info 7 0 R /Prev " +
                 std::to_string(x3a) + " >>",
             x3b);

  return {HostFile::from_bytes(h1.bytes(), "host1"),
          HostFile::from_bytes(h2.bytes(), "host2"),
          HostFile::from_bytes(h3.bytes(), "host3")};
}

}  // namespace learnfuzz::assembler

#endif  // LEARNFUZZ_ASSEMBLER_HPP_
