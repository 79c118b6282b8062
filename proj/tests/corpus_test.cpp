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

#include <string>

#include "learnfuzz/corpus.hpp"
#include "learnfuzz/error.hpp"
#include "learnfuzz/pdf/parser.hpp"
#include "learnfuzz/synthetic.hpp"

namespace lc = learnfuzz::corpus;

namespace {

lc::ObjectRecord rec(std::string body) {
  lc::ObjectRecord r;
  r.body = std::move(body);
  return r;
}

TEST(ExtractObjects, SingleArrayObject) {
  const auto out = lc::extract_objects("125 0 obj [680.6 680.6] endobj", "a.pdf");
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].object_id, 125u);
  EXPECT_EQ(out[0].generation, 0u);
  EXPECT_EQ(out[0].body, "125 0 obj [680.6 680.6] endobj");
  EXPECT_EQ(out[0].source, "a.pdf");
}

TEST(ExtractObjects, EmptyInput) { EXPECT_TRUE(lc::extract_objects("").empty()); }

TEST(ExtractObjects, SkipsStreamsAndKeepsOrder) {
  const std::string file =
      "%PDF-1.4\n1 0 obj\n(a)\nendobj\n2 0 obj\n<< /Length 3 >>\nstream\nxyz\n"
      "endstream\nendobj\n3 0 obj 7 endobj\n";
  const auto out = lc::extract_objects(file);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].object_id, 1u);
  EXPECT_EQ(out[1].object_id, 3u);
  EXPECT_EQ(out[1].body, "3 0 obj 7 endobj");
}

TEST(ExtractObjects, RejectsNonCanonicalOrGluedHeaders) {
  EXPECT_TRUE(lc::extract_objects("01 0 obj 1 endobj").empty());
  EXPECT_TRUE(lc::extract_objects("x1 0 obj 1 endobj").empty());
  EXPECT_TRUE(lc::extract_objects("1 0 objx 1 endobj").empty());
  EXPECT_TRUE(lc::extract_objects("1 0 obj 1 endob").empty());
  EXPECT_EQ(lc::extract_objects("/A 1 0 obj 1 endobj").size(), 1u);
}

TEST(ExtractObjects, NeverFailsOnGarbage) {
  std::string junk;
  for (int i = 0; i < 5000; ++i) junk += static_cast<char>((i * 131) & 0xFF);
  junk += " 1 0 obj obj obj endobj endobj 0 0 obj";
  const auto out = lc::extract_objects(junk);
  for (const auto& o : out) {
    EXPECT_TRUE(o.body.ends_with("endobj"));
    EXPECT_EQ(o.body.find("stream"), std::string::npos);
  }
}

// Re-extracting the concatenated bodies gives the same records.
TEST(ExtractObjectsProperty, IdempotentOnOwnOutput) {
  const auto corpus = lc::synthetic_corpus(300, 5);
  const auto first = lc::extract_objects(lc::concatenate(corpus));
  ASSERT_EQ(first.size(), corpus.size());
  const auto second = lc::extract_objects(lc::concatenate(first));
  EXPECT_EQ(first, second);
}

TEST(BuildWindows, ShiftedByOne) {
  const auto set = lc::build_windows({rec("abcdef")}, 3);  // text "abcdef\n"
  ASSERT_EQ(set.windows.size(), 2u);
  EXPECT_EQ(set.windows[0].input, "abc");
  EXPECT_EQ(set.windows[0].target, "bcd");
  EXPECT_EQ(set.windows[1].input, "def");
  EXPECT_EQ(set.windows[1].target, "ef\n");
}

TEST(BuildWindows, TooSmall) {
  try {
    lc::build_windows({rec("a")}, 3);  // "a\n" has 2 characters
    FAIL();
  } catch (const learnfuzz::Error& e) {
    EXPECT_EQ(e.code(), learnfuzz::Errc::corpus_too_small);
  }
  EXPECT_THROW(lc::build_windows({rec("abc")}, 0), learnfuzz::Error);
}

TEST(BuildWindows, SyntheticWindowCountByRecount) {
  const auto corpus = lc::synthetic_corpus(5000, 7);
  const auto set = lc::build_windows(corpus, 64);
  std::size_t total = 0;
  for (const auto& o : corpus) total += o.body.size() + 1;
  EXPECT_EQ(set.text.size(), total);
  EXPECT_EQ(set.windows.size(), (total - 1) / 64);
  for (std::size_t i = 0; i < set.windows.size(); i += 97) {
    const auto& w = set.windows[i];
    for (std::size_t k = 0; k + 1 < 64; ++k) EXPECT_EQ(w.target[k], w.input[k + 1]);
    EXPECT_EQ(w.target[63], set.text[(i + 1) * 64]);
  }
}

TEST(ObjectFile, RoundTrip) {
  const auto corpus = lc::synthetic_corpus(50, 2);
  const auto back = lc::read_object_file(lc::write_object_file(corpus), "synthetic");
  ASSERT_EQ(back.size(), corpus.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].body, corpus[i].body);
    EXPECT_EQ(back[i].object_id, corpus[i].object_id);
  }
}

TEST(FilterByLength, InclusiveBounds) {
  const auto out = lc::filter_by_length({rec("ab"), rec("abc"), rec("abcd")}, 3, 3);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].body, "abc");
}

TEST(SyntheticCorpus, DeterministicAndWellFormed) {
  const auto a = lc::synthetic_corpus(500, 42);
  EXPECT_EQ(a, lc::synthetic_corpus(500, 42));
  EXPECT_NE(a, lc::synthetic_corpus(500, 43));
  for (const auto& o : a) {
    EXPECT_TRUE(o.body.starts_with(std::to_string(o.object_id) + " 0 obj"));
    EXPECT_TRUE(o.body.ends_with("endobj"));
    EXPECT_TRUE(learnfuzz::pdf::parse_object(o.body).pass) << o.body;
  }
}

}  // namespace
