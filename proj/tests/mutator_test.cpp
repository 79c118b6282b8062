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

#include <cmath>
#include <string>

#include "learnfuzz/error.hpp"
#include "learnfuzz/mutator.hpp"

namespace lmu = learnfuzz::mutator;

namespace {

lmu::FuzzConfig fuzz(double factor, std::uint64_t seed) {
  lmu::FuzzConfig c;
  c.fuzz_factor = factor;
  c.rng_seed = seed;
  return c;
}

TEST(RandomFuzz, PreservesLengthAndIsDeterministic) {
  const std::string data(1000, 'x');
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto a = lmu::random_fuzz(data, fuzz(20, seed));
    EXPECT_EQ(a.size(), data.size());
    EXPECT_EQ(a, lmu::random_fuzz(data, fuzz(20, seed)));
  }
  EXPECT_NE(lmu::random_fuzz(data, fuzz(20, 1)), lmu::random_fuzz(data, fuzz(20, 2)));
}

TEST(RandomFuzz, OnlyDrawnPositionsChange) {
  const std::string data(500, 'a');
  const auto r = lmu::random_fuzz_traced(data, fuzz(10, 4));
  std::size_t next = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const bool drawn = next < r.positions.size() && r.positions[next] == i;
    if (drawn) ++next;
    if (!drawn) {
      EXPECT_EQ(r.bytes[i], 'a');
    }
  }
  EXPECT_EQ(next, r.positions.size());
}

TEST(RandomFuzz, OneExpectedDrawWhenFactorEqualsLength) {
  const std::string data(100, 'q');
  double total = 0.0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    total += static_cast<double>(
        lmu::random_fuzz_traced(data, fuzz(100, static_cast<std::uint64_t>(t))).positions.size());
  }
  const double mean = total / trials;
  EXPECT_GE(mean, 0.9);
  EXPECT_LE(mean, 1.1);
}

TEST(RandomFuzz, ReplacementBytesCoverFullRange) {
  const std::string data(20000, '\0');
  const auto r = lmu::random_fuzz_traced(data, fuzz(1, 8));
  EXPECT_EQ(r.positions.size(), data.size());
  std::array<int, 256> seen{};
  for (unsigned char c : r.bytes) ++seen[c];
  for (int b = 0; b < 256; ++b) EXPECT_GT(seen[static_cast<std::size_t>(b)], 0) << b;
}

TEST(RandomFuzz, Errors) {
  try {
    lmu::random_fuzz("", fuzz(100, 1));
    FAIL();
  } catch (const learnfuzz::Error& e) {
    EXPECT_EQ(e.code(), learnfuzz::Errc::empty_input);
  }
  EXPECT_THROW(lmu::random_fuzz("abc", fuzz(0.5, 1)), learnfuzz::Error);
  EXPECT_THROW(lmu::random_fuzz("abc", fuzz(NAN, 1)), learnfuzz::Error);
}

TEST(MakeVariants, CountAndOrder) {
  std::vector<std::string> objects;
  for (int i = 0; i < 1000; ++i) objects.push_back("obj " + std::to_string(i) + " endobj");
  auto c = fuzz(100, 9);
  c.variants = 10;
  const auto out = lmu::make_variants(objects, c);
  ASSERT_EQ(out.size(), 10000u);
  for (std::size_t s = 0; s < objects.size(); s += 111) {
    for (int v = 0; v < 10; ++v) {
      EXPECT_EQ(out[s * 10 + static_cast<std::size_t>(v)].size(), objects[s].size());
    }
  }
  EXPECT_EQ(out, lmu::make_variants(objects, c));
}

TEST(MakeVariants, HugeFactorLeavesInputsIntact) {
  std::vector<std::string> objects(1000, "obj << /Type /Page >> endobj");
  auto c = fuzz(1e9, 3);
  c.variants = 1;
  const auto out = lmu::make_variants(objects, c);
  std::size_t same = 0;
  for (std::size_t i = 0; i < out.size(); ++i) same += out[i] == objects[i];
  EXPECT_GE(same, 990u);
}

TEST(MakeVariants, EmptyListIsError) {
  EXPECT_THROW(lmu::make_variants(std::vector<std::string>{}, fuzz(100, 1)), learnfuzz::Error);
  EXPECT_THROW(lmu::make_variants(std::vector<std::string>{""}, fuzz(100, 1)), learnfuzz::Error);
}

}  // namespace
