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

#ifndef LEARNFUZZ_PDF_COVERAGE_HPP_
#define LEARNFUZZ_PDF_COVERAGE_HPP_

#include <algorithm>
#include <array>
#include <bitset>
#include <cstdint>
#include <iterator>
#include <span>
#include <string_view>
#include <vector>

namespace learnfuzz::pdf {

/// Instrumented units of the reference parser. Each unit owns a block of
/// statically numbered points; numbering is part of the file format of
/// coverage dumps and must stay stable.
enum class Unit : std::uint8_t {
  lexer = 0,
  parser = 1,
  semantic = 2,
  xref = 3,
  trailer = 4,
  host = 5,
};

inline constexpr std::size_t kUnitCount = 6;
inline constexpr std::size_t kPointsPerUnit = 128;

inline constexpr std::array<std::string_view, kUnitCount> kUnitNames = {
    "lexer", "parser", "semantic", "xref", "trailer", "host"};

constexpr std::string_view unit_name(Unit unit) {
  return kUnitNames[static_cast<std::size_t>(unit)];
}

struct CoveragePoint {
  Unit unit;
  std::uint16_t id;

  std::uint32_t key() const {
    return static_cast<std::uint32_t>(unit) * kPointsPerUnit + id;
  }
  static CoveragePoint from_key(std::uint32_t key) {
    return {static_cast<Unit>(key / kPointsPerUnit),
            static_cast<std::uint16_t>(key % kPointsPerUnit)};
  }
  friend auto operator<=>(const CoveragePoint&, const CoveragePoint&) = default;
};

/// Sorted, duplicate-free set of coverage points.
class CoverageSet {
 public:
  CoverageSet() = default;

  static CoverageSet from_keys(std::vector<std::uint32_t> keys) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    CoverageSet s;
    s.keys_ = std::move(keys);
    return s;
  }

  void insert(CoveragePoint p) {
    auto k = p.key();
    auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
    if (it == keys_.end() || *it != k) keys_.insert(it, k);
  }

  bool contains(CoveragePoint p) const {
    return std::binary_search(keys_.begin(), keys_.end(), p.key());
  }

  void merge(const CoverageSet& other) {
    if (other.keys_.empty()) return;
    std::vector<std::uint32_t> out;
    out.reserve(keys_.size() + other.keys_.size());
    std::set_union(keys_.begin(), keys_.end(), other.keys_.begin(),
                   other.keys_.end(), std::back_inserter(out));
    keys_ = std::move(out);
  }

  // |this \ other|
  std::size_t difference_size(const CoverageSet& other) const {
    std::size_t n = 0;
    auto a = keys_.begin();
    auto b = other.keys_.begin();
    while (a != keys_.end()) {
      if (b == other.keys_.end() || *a < *b) {
        ++n;
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++a;
        ++b;
      }
    }
    return n;
  }

  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  const std::vector<std::uint32_t>& keys() const { return keys_; }

  std::vector<CoveragePoint> points() const {
    std::vector<CoveragePoint> out;
    out.reserve(keys_.size());
    for (auto k : keys_) out.push_back(CoveragePoint::from_key(k));
    return out;
  }

  friend bool operator==(const CoverageSet&, const CoverageSet&) = default;

 private:
  std::vector<std::uint32_t> keys_;
};

inline CoverageSet coverage_union(std::span<const CoverageSet> sets) {
  CoverageSet out;
  for (const auto& s : sets) out.merge(s);
  return out;
}

/// Per-call hit recorder. Parsers take one by reference; nothing global.
class CoverageRecorder {
 public:
  void hit(Unit unit, std::uint16_t id) {
    hits_.set(CoveragePoint{unit, id}.key());
  }

  void merge(const CoverageSet& set) {
    for (auto k : set.keys()) hits_.set(k);
  }

  CoverageSet to_set() const {
    std::vector<std::uint32_t> keys;
    for (std::size_t k = 0; k < hits_.size(); ++k) {
      if (hits_.test(k)) keys.push_back(static_cast<std::uint32_t>(k));
    }
    return CoverageSet::from_keys(std::move(keys));
  }

 private:
  std::bitset<kUnitCount * kPointsPerUnit> hits_;
};

}  // namespace learnfuzz::pdf

#endif  // LEARNFUZZ_PDF_COVERAGE_HPP_
