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

#ifndef LEARNFUZZ_PDF_HOST_HPP_
#define LEARNFUZZ_PDF_HOST_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "learnfuzz/error.hpp"
#include "learnfuzz/pdf/coverage.hpp"
#include "learnfuzz/pdf/parser.hpp"
#include "learnfuzz/pdf/value.hpp"

namespace learnfuzz::pdf {

struct XrefEntry {
  // Byte offset for in-use entries; next free object id for free entries.
  std::uint64_t offset = 0;
  std::uint32_t generation = 0;
  bool in_use = false;

  friend bool operator==(const XrefEntry&, const XrefEntry&) = default;
};

struct XrefSubsection {
  std::uint64_t start_id = 0;
  std::vector<XrefEntry> entries;
};

struct XrefTable {
  std::vector<XrefSubsection> subsections;

  std::optional<XrefEntry> find(std::uint64_t id) const {
    for (const auto& sub : subsections) {
      if (id >= sub.start_id && id - sub.start_id < sub.entries.size()) {
        return sub.entries[id - sub.start_id];
      }
    }
    return std::nullopt;
  }
};

struct Trailer {
  Dict dict;
  // Offset of this body's "xref" keyword.
  std::uint64_t startxref = 0;
};

struct HostObject {
  std::uint64_t object_id = 0;
  std::uint32_t generation = 0;
  std::size_t offset = 0;
  std::size_t end = 0;  // exclusive end of the region handed to the parser
  ParseOutcome outcome;
  // Parsed header equals the xref entry's id and generation.
  bool header_matches = false;
};

struct Body {
  std::vector<HostObject> objects;
  XrefTable xref;
  Trailer trailer;
};

struct ResolvedObject {
  XrefEntry entry;
  std::size_t body_index = 0;
  const HostObject* object = nullptr;  // null for free entries
};

struct HostParse {
  std::vector<Body> bodies;  // oldest first
  std::uint64_t last_object_id = 0;
  CoverageSet coverage;

  const Trailer& last_trailer() const { return bodies.back().trailer; }

  // Newest body wins.
  std::optional<ResolvedObject> resolve(std::uint64_t id) const {
    for (std::size_t b = bodies.size(); b-- > 0;) {
      if (auto entry = bodies[b].xref.find(id)) {
        ResolvedObject r{*entry, b, nullptr};
        if (entry->in_use) {
          for (const auto& obj : bodies[b].objects) {
            if (obj.object_id == id) r.object = &obj;
          }
        }
        return r;
      }
    }
    return std::nullopt;
  }
};

struct HostParseResult {
  std::optional<HostParse> host;
  std::string error;
  std::size_t error_offset = 0;
  CoverageSet coverage;
};

namespace detail {

class HostParser {
 public:
  explicit HostParser(std::string_view bytes) : bytes_(bytes) {}

  HostParseResult run() {
    HostParseResult result;
    HostParse host;
    if (parse(host)) {
      host.coverage = cov_.to_set();
      result.host = std::move(host);
    } else {
      result.error = error_;
      result.error_offset = error_offset_;
    }
    result.coverage = cov_.to_set();
    return result;
  }

 private:
  void hit(Unit u, std::uint16_t id) { cov_.hit(u, id); }
  void hit_host(std::uint16_t id) { hit(Unit::host, id); }
  void hit_xref(std::uint16_t id) { hit(Unit::xref, id); }
  void hit_trailer(std::uint16_t id) { hit(Unit::trailer, id); }

  bool fail(std::size_t offset, std::string message) {
    error_ = std::move(message);
    error_offset_ = std::min(offset, bytes_.size());
    return false;
  }

  bool starts_with_at(std::size_t pos, std::string_view word) const {
    return pos <= bytes_.size() && bytes_.substr(pos).starts_with(word);
  }

  void skip_ws(std::size_t& pos) const {
    while (pos < bytes_.size() &&
           is_pdf_whitespace(static_cast<unsigned char>(bytes_[pos]))) {
      ++pos;
    }
  }

  bool read_uint(std::size_t& pos, std::uint64_t& value) const {
    const std::size_t start = pos;
    value = 0;
    while (pos < bytes_.size() && bytes_[pos] >= '0' && bytes_[pos] <= '9') {
      if (pos - start >= 18) return false;
      value = value * 10 + static_cast<std::uint64_t>(bytes_[pos] - '0');
      ++pos;
    }
    return pos > start;
  }

  bool parse(HostParse& host) {
    hit_host(1);
    if (bytes_.starts_with("%PDF-")) {
      hit_host(2);
      const auto eol = bytes_.find('\n');
      if (eol != std::string_view::npos && eol + 1 < bytes_.size() &&
          bytes_[eol + 1] == '%' && eol + 2 < bytes_.size() &&
          static_cast<unsigned char>(bytes_[eol + 2]) >= 0x80) {
        hit_host(4);
      }
    } else {
      hit_host(3);
    }

    const std::size_t sx = bytes_.rfind("startxref");
    if (sx == std::string_view::npos) {
      hit_host(6);
      return fail(bytes_.size(), "missing startxref");
    }
    hit_host(5);
    std::size_t pos = sx + 9;
    skip_ws(pos);
    std::uint64_t xref_offset = 0;
    if (!read_uint(pos, xref_offset)) {
      hit_host(7);
      return fail(pos, "startxref is not followed by an offset");
    }
    skip_ws(pos);
    if (starts_with_at(pos, "%%EOF")) {
      hit_host(8);
      pos += 5;
      skip_ws(pos);
      if (pos < bytes_.size()) hit_host(24);
    } else {
      hit_host(9);
    }

    std::vector<Body> newest_first;
    std::set<std::uint64_t> visited;
    std::optional<std::uint64_t> next = xref_offset;
    while (next) {
      const std::uint64_t off = *next;
      next.reset();
      if (off >= bytes_.size()) {
        hit_host(10);
        return fail(bytes_.size(), "xref offset " + std::to_string(off) +
                                       " beyond end of file");
      }
      if (!visited.insert(off).second || visited.size() > 4096) {
        hit_host(12);
        return fail(off, "cycle in /Prev chain");
      }
      Body body;
      if (!parse_section(off, body)) return false;
      if (const auto* prev = body.trailer.dict.find("Prev")) {
        const auto* n = prev->get_if<Number>();
        if (!n || !(n->value >= 0 && n->value < 1e18) ||
            std::floor(n->value) != n->value) {
          hit_host(13);
          return fail(off, "/Prev is not a non-negative integer");
        }
        hit_host(11);
        next = static_cast<std::uint64_t>(n->value);
      }
      newest_first.push_back(std::move(body));
    }
    if (newest_first.size() > 1) hit_host(14);
    if (newest_first.size() > 2) hit_host(15);
    host.bodies.assign(std::make_move_iterator(newest_first.rbegin()),
                       std::make_move_iterator(newest_first.rend()));
    return parse_objects(host);
  }

  bool parse_section(std::size_t off, Body& body) {
    hit_xref(1);
    if (!starts_with_at(off, "xref")) {
      hit_xref(3);
      return fail(off, "xref offset mismatch: no 'xref' keyword at " +
                           std::to_string(off));
    }
    hit_xref(2);
    std::size_t pos = off + 4;
    while (true) {
      skip_ws(pos);
      if (starts_with_at(pos, "trailer")) break;
      if (pos >= bytes_.size()) {
        hit_xref(19);
        return fail(pos, "missing trailer");
      }
      XrefSubsection sub;
      std::uint64_t count = 0;
      if (!read_uint(pos, sub.start_id) || pos >= bytes_.size() ||
          bytes_[pos] != ' ') {
        hit_xref(6);
        return fail(pos, "malformed xref subsection header");
      }
      ++pos;
      if (!read_uint(pos, count)) {
        hit_xref(6);
        return fail(pos, "malformed xref subsection header");
      }
      hit_xref(4);
      hit_xref(sub.start_id == 0 ? 15 : 16);
      if (count == 0) hit_xref(17);
      if (count > 10) hit_xref(14);
      while (pos < bytes_.size() && bytes_[pos] == ' ') ++pos;
      if (starts_with_at(pos, "\r\n")) {
        pos += 2;
      } else if (pos < bytes_.size() &&
                 (bytes_[pos] == '\n' || bytes_[pos] == '\r')) {
        ++pos;
      } else {
        hit_xref(6);
        return fail(pos, "xref subsection header not terminated by EOL");
      }
      if (count > (bytes_.size() - pos) / 20) {
        hit_xref(18);
        return fail(pos, "xref subsection runs past end of file");
      }
      for (std::uint64_t i = 0; i < count; ++i) {
        XrefEntry entry;
        if (!parse_entry(pos, entry)) return false;
        sub.entries.push_back(entry);
      }
      body.xref.subsections.push_back(std::move(sub));
    }
    if (body.xref.subsections.size() > 1) hit_xref(5);
    pos += 7;
    return parse_trailer(pos, off, body);
  }

  bool parse_entry(std::size_t& pos, XrefEntry& entry) {
    const std::string_view e = bytes_.substr(pos, 20);
    auto digits = [&](std::size_t from, std::size_t n, std::uint64_t& v) {
      v = 0;
      for (std::size_t k = from; k < from + n; ++k) {
        if (e[k] < '0' || e[k] > '9') return false;
        v = v * 10 + static_cast<std::uint64_t>(e[k] - '0');
      }
      return true;
    };
    std::uint64_t offset = 0;
    std::uint64_t gen = 0;
    if (e.size() < 20 || !digits(0, 10, offset) || e[10] != ' ' ||
        !digits(11, 5, gen) || e[16] != ' ' || (e[17] != 'n' && e[17] != 'f')) {
      hit_xref(10);
      return fail(pos, "malformed xref entry");
    }
    const std::string_view eol = e.substr(18, 2);
    if (eol == " \r") hit_xref(11);
    else if (eol == " \n") hit_xref(12);
    else if (eol == "\r\n") hit_xref(13);
    else {
      hit_xref(10);
      return fail(pos + 18, "xref entry not terminated by a two-byte EOL");
    }
    entry.offset = offset;
    entry.generation = static_cast<std::uint32_t>(gen);
    entry.in_use = e[17] == 'n';
    if (entry.in_use) {
      hit_xref(7);
      if (offset == 0) hit_xref(20);
      if (gen > 0) hit_xref(21);
    } else {
      hit_xref(8);
      if (gen == 65535) hit_xref(9);
    }
    pos += 20;
    return true;
  }

  bool parse_trailer(std::size_t pos, std::size_t xref_offset, Body& body) {
    hit_trailer(1);
    ParseOptions options;
    ObjectParser parser(bytes_, cov_, options, pos);
    auto value = parser.parse_single_value();
    if (!value) {
      hit_trailer(4);
      return fail(parser.error_offset(),
                  "bad trailer dictionary: " + parser.error_message());
    }
    const auto* dict = value->get_if<Dict>();
    if (!dict) {
      hit_trailer(3);
      return fail(pos, "trailer is not a dictionary");
    }
    hit_trailer(2);
    body.trailer.dict = *dict;
    body.trailer.startxref = xref_offset;
    if (const auto* size = dict->find("Size")) {
      hit_trailer(5);
      if (!size->is<Number>()) hit_trailer(13);
    } else {
      hit_trailer(6);
    }
    if (const auto* root = dict->find("Root")) {
      hit_trailer(7);
      if (!root->is<Ref>()) hit_trailer(14);
    }
    if (dict->find("Info")) hit_trailer(8);
    if (dict->find("Prev")) hit_trailer(9);
    if (dict->find("ID")) hit_trailer(10);
    if (dict->find("Encrypt")) hit_trailer(15);
    std::size_t after = parser.consumed_until();
    skip_ws(after);
    hit_trailer(starts_with_at(after, "startxref") ? 11 : 12);
    return true;
  }

  bool parse_objects(HostParse& host) {
    std::vector<std::size_t> boundaries{bytes_.size()};
    for (const auto& body : host.bodies) {
      boundaries.push_back(body.trailer.startxref);
      for (const auto& sub : body.xref.subsections) {
        for (const auto& e : sub.entries) {
          if (e.in_use) boundaries.push_back(e.offset);
        }
      }
    }
    std::sort(boundaries.begin(), boundaries.end());
    boundaries.erase(std::unique(boundaries.begin(), boundaries.end()),
                     boundaries.end());

    std::map<std::uint64_t, std::size_t> newest_body;
    for (std::size_t b = 0; b < host.bodies.size(); ++b) {
      auto& body = host.bodies[b];
      for (const auto& sub : body.xref.subsections) {
        for (std::size_t i = 0; i < sub.entries.size(); ++i) {
          const auto& e = sub.entries[i];
          const std::uint64_t id = sub.start_id + i;
          if (newest_body.count(id)) hit_host(20);
          newest_body[id] = b;
          if (!e.in_use) continue;
          if (e.offset >= bytes_.size()) {
            hit_host(16);
            return fail(bytes_.size(), "object " + std::to_string(id) +
                                           " offset beyond end of file");
          }
          HostObject obj;
          obj.object_id = id;
          obj.generation = e.generation;
          obj.offset = static_cast<std::size_t>(e.offset);
          obj.end = *std::upper_bound(boundaries.begin(), boundaries.end(),
                                      e.offset);
          CoverageRecorder obj_cov;
          ObjectParser parser(bytes_.substr(obj.offset, obj.end - obj.offset),
                              obj_cov, ParseOptions{});
          obj.outcome = parser.parse_object();
          obj.outcome.coverage = obj_cov.to_set();
          cov_.merge(obj.outcome.coverage);
          obj.header_matches = obj.outcome.pass &&
                               obj.outcome.object_id == id &&
                               obj.outcome.generation == e.generation;
          hit_host(obj.outcome.pass ? 17 : 18);
          if (obj.outcome.pass && !obj.header_matches) hit_host(19);
          body.objects.push_back(std::move(obj));
        }
      }
    }

    bool any = false;
    for (const auto& [id, b] : newest_body) {
      const auto entry = host.bodies[b].xref.find(id);
      if (entry && entry->in_use) {
        any = true;
        host.last_object_id = std::max(host.last_object_id, id);
        if (entry->generation > 0) hit_host(21);
      }
    }
    hit_host(any ? 22 : 23);
    return true;
  }

  static bool is_pdf_whitespace(unsigned char c) {
    return pdf::detail::is_pdf_whitespace(c);
  }

  std::string_view bytes_;
  CoverageRecorder cov_;
  std::string error_;
  std::size_t error_offset_ = 0;
};

}  // namespace detail

/// Structural parse of a whole PDF file, read from the end: startxref, then
/// each xref section and trailer, following /Prev. Every in-use object is
/// handed to the object parser; object-level failures are recorded in the
/// result rather than failing the host.
inline HostParseResult try_parse_host(std::string_view bytes) {
  return detail::HostParser(bytes).run();
}

inline HostParse parse_host(std::string_view bytes) {
  auto result = try_parse_host(bytes);
  if (!result.host) {
    throw Error(Errc::host_malformed,
                result.error + " (offset " +
                    std::to_string(result.error_offset) + ")");
  }
  return std::move(*result.host);
}

}  // namespace learnfuzz::pdf

#endif  // LEARNFUZZ_PDF_HOST_HPP_
