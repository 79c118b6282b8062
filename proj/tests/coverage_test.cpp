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

#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "learnfuzz/pdf/coverage.hpp"
#include "learnfuzz/rng.hpp"

namespace lp = learnfuzz::pdf;

namespace {

lp::CoverageSet make(std::initializer_list<std::uint32_t> keys) {
  return lp::CoverageSet::from_keys(keys);
}

TEST(CoverageSet, KeysAreSortedAndUnique) {
  auto s = make({7, 3, 7, 1});
  EXPECT_EQ(s.keys(), (std::vector<std::uint32_t>{1, 3, 7}));
  s.insert(lp::CoveragePoint::from_key(2));
  s.insert(lp::CoveragePoint::from_key(3));
  EXPECT_EQ(s.keys(), (std::vector<std::uint32_t>{1, 2, 3, 7}));
}

TEST(CoverageSet, PointKeyRoundTrip) {
  for (std::uint32_t k = 0; k < lp::kUnitCount * lp::kPointsPerUnit; ++k) {
    EXPECT_EQ(lp::CoveragePoint::from_key(k).key(), k);
  }
  lp::CoveragePoint p{lp::Unit::xref, 9};
  EXPECT_EQ(p.key(), 3u * lp::kPointsPerUnit + 9);
}

TEST(CoverageUnion, EmptyAndIdempotent) {
  const auto a = make({1, 5, 9});
  const std::vector<lp::CoverageSet> with_empty{a, lp::CoverageSet{}};
  EXPECT_EQ(lp::coverage_union(with_empty), a);
  const std::vector<lp::CoverageSet> twice{a, a};
  EXPECT_EQ(lp::coverage_union(twice), a);
}

TEST(CoverageUnion, MatchesStdSetOnRandomSets) {
  auto rng = learnfuzz::make_rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<lp::CoverageSet> sets(3);
    std::set<std::uint32_t> ref;
    std::size_t largest = 0;
    for (auto& s : sets) {
      std::vector<std::uint32_t> keys;
      const auto n = learnfuzz::uniform_below(rng, 40);
      for (std::uint64_t i = 0; i < n; ++i) {
        keys.push_back(static_cast<std::uint32_t>(learnfuzz::uniform_below(rng, 100)));
      }
      ref.insert(keys.begin(), keys.end());
      s = lp::CoverageSet::from_keys(keys);
      largest = std::max(largest, s.size());
    }
    const auto u = lp::coverage_union(sets);
    EXPECT_EQ(u.keys(), std::vector<std::uint32_t>(ref.begin(), ref.end()));
    EXPECT_GE(u.size(), largest);
  }
}

TEST(CoverageSet, DifferenceSizeAgreesWithStdSetDifference) {
  auto rng = learnfuzz::make_rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint32_t> ka, kb;
    for (int i = 0; i < 30; ++i) {
      ka.push_back(static_cast<std::uint32_t>(learnfuzz::uniform_below(rng, 60)));
      kb.push_back(static_cast<std::uint32_t>(learnfuzz::uniform_below(rng, 60)));
    }
    const auto a = lp::CoverageSet::from_keys(ka);
    const auto b = lp::CoverageSet::from_keys(kb);
    std::vector<std::uint32_t> diff;
    std::set_difference(a.keys().begin(), a.keys().end(), b.keys().begin(),
                        b.keys().end(), std::back_inserter(diff));
    EXPECT_EQ(a.difference_size(b), diff.size());
    EXPECT_EQ(a.difference_size(a), 0u);
  }
}

TEST(CoverageRecorder, CollectsHitsOnce) {
  lp::CoverageRecorder rec;
  rec.hit(lp::Unit::lexer, 3);
  rec.hit(lp::Unit::lexer, 3);
  rec.hit(lp::Unit::host, 1);
  const auto s = rec.to_set();
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains({lp::Unit::host, 1}));
  EXPECT_FALSE(s.contains({lp::Unit::parser, 3}));
}

}  // namespace
