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

#include "learnfuzz/mutator.hpp"
#include "learnfuzz/pdf/parser.hpp"
#include "learnfuzz/pdf/value.hpp"
#include "learnfuzz/rng.hpp"
#include "learnfuzz/synthetic.hpp"

namespace lp = learnfuzz::pdf;
using lp::ParseError;

namespace {

TEST(ParseObject, NumericArray) {
  const auto r = lp::parse_object("125 0 obj [680.6 680.6] endobj");
  ASSERT_TRUE(r.pass) << r.message;
  EXPECT_EQ(r.object_id, 125u);
  EXPECT_EQ(r.generation, 0u);
  const auto& arr = r.value->as<lp::Array>();
  ASSERT_EQ(arr.items.size(), 2u);
  for (const auto& v : arr.items) EXPECT_DOUBLE_EQ(v.as<lp::Number>().value, 680.6);
}

TEST(ParseObject, MultiTypeArray) {
  const auto r = lp::parse_object("47 1 obj [false 170 85.5 (Hello) /My#20Name] endobj");
  ASSERT_TRUE(r.pass) << r.message;
  const auto& items = r.value->as<lp::Array>().items;
  ASSERT_EQ(items.size(), 5u);
  EXPECT_EQ(items[0], lp::PdfValue(lp::Boolean{false}));
  EXPECT_EQ(items[1], lp::PdfValue(lp::Number{170}));
  EXPECT_EQ(items[2], lp::PdfValue(lp::Number{85.5}));
  EXPECT_EQ(items[3], lp::PdfValue(lp::LiteralString{"Hello"}));
  EXPECT_EQ(items[4], lp::PdfValue(lp::Name{"My Name"}));
}

TEST(ParseObject, StringAndNumberObjects) {
  EXPECT_TRUE(lp::parse_object("88 0 obj (Related Work) endobj").pass);
  EXPECT_TRUE(lp::parse_object("75 0 obj 4171 endobj").pass);
}

TEST(ParseObject, DictionaryWithReferences) {
  const auto r = lp::parse_object(
      "2 0 obj\n<<\n/Type /Pages\n/Kids [ 3 0 R 4 0 R ]\n/Count 2\n>>\nendobj");
  ASSERT_TRUE(r.pass) << r.message;
  const auto& d = r.value->as<lp::Dict>();
  EXPECT_EQ(d.find("Type")->as<lp::Name>().text, "Pages");
  const auto& kids = d.find("Kids")->as<lp::Array>().items;
  ASSERT_EQ(kids.size(), 2u);
  EXPECT_EQ(kids[1], lp::PdfValue(lp::Ref{4, 0}));
}

TEST(ParseObject, BareBodyNeedsNonStrictMode) {
  const std::string body = "obj << /Type /Pages >> endobj";
  EXPECT_FALSE(lp::parse_object(body).pass);
  const auto r = lp::parse_object(body, lp::ParseOptions{.strict = false});
  EXPECT_TRUE(r.pass) << r.message;
  EXPECT_FALSE(r.object_id);
}

struct FailCase {
  const char* text;
  ParseError error;
};

class ParseFailures : public ::testing::TestWithParam<FailCase> {};

TEST_P(ParseFailures, CodeAndOffset) {
  const std::string text = GetParam().text;
  const auto r = lp::parse_object(text);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.error, GetParam().error)
      << text << " -> " << lp::to_string(r.error) << ": " << r.message;
  EXPECT_FALSE(r.message.empty());
  EXPECT_LE(r.offset, text.size());
  EXPECT_FALSE(r.value);
}

INSTANTIATE_TEST_SUITE_P(
    Parser, ParseFailures,
    ::testing::Values(
        FailCase{"125 0 obj [680.6 endobj", ParseError::unbalanced_delimiter},
        FailCase{"125 0 obj 680.6] endobj", ParseError::unbalanced_delimiter},
        FailCase{"1 0 obj 5 6 endobj", ParseError::missing_endobj},
        FailCase{"125 0 [1] endobj", ParseError::missing_obj_keyword},
        FailCase{"", ParseError::missing_obj_keyword},
        FailCase{"1 0 obj << /A 1 >>", ParseError::missing_endobj},
        FailCase{"1 0 obj << (k) 1 >> endobj", ParseError::bad_dict_key},
        FailCase{"1 0 obj << /A 1 ] endobj", ParseError::unbalanced_delimiter},
        FailCase{"1 0 obj (abc endobj", ParseError::lex_error},
        FailCase{"1 0 obj 5 endobj 6", ParseError::trailing_garbage},
        FailCase{"1 0 obj endobj", ParseError::unexpected_token},
        FailCase{"1 0 obj << /A >> endobj", ParseError::unexpected_token}));

TEST(ParseObject, DepthLimit) {
  std::string deep = "1 0 obj ";
  for (int i = 0; i < 70; ++i) deep += "[";
  for (int i = 0; i < 70; ++i) deep += "]";
  deep += " endobj";
  const auto r = lp::parse_object(deep);
  EXPECT_EQ(r.error, ParseError::depth_exceeded);

  std::string ok = "1 0 obj ";
  for (int i = 0; i < 64; ++i) ok += "[";
  for (int i = 0; i < 64; ++i) ok += "]";
  ok += " endobj";
  EXPECT_TRUE(lp::parse_object(ok).pass);
}

TEST(ParseObject, TokenBudget) {
  std::string big = "1 0 obj [";
  for (int i = 0; i < 200; ++i) big += " 1";
  big += " ] endobj";
  EXPECT_TRUE(lp::parse_object(big).pass);
  const auto r = lp::parse_object(big, lp::ParseOptions{.token_budget = 100});
  EXPECT_EQ(r.error, ParseError::token_budget_exceeded);
}

TEST(ParseObject, DifferentValueKindsReachDifferentCoverage) {
  const auto a = lp::parse_object("1 0 obj [1 2] endobj").coverage;
  const auto b = lp::parse_object("1 0 obj << /Type /Font >> endobj").coverage;
  EXPECT_GT(a.difference_size(b), 0u);
  EXPECT_GT(b.difference_size(a), 0u);
}

TEST(ParseObject, CoverageIsDeterministic) {
  const std::string text = "3 0 obj << /Type /Page /MediaBox [0 0 612 792] >> endobj";
  EXPECT_EQ(lp::parse_object(text).coverage, lp::parse_object(text).coverage);
}

// Pass => serialize(value) re-parses to an equal value.
TEST(ParseObjectProperty, PrintParseRoundTrip) {
  const auto corpus = learnfuzz::corpus::synthetic_corpus(400, 3);
  std::size_t checked = 0;
  for (const auto& rec : corpus) {
    const auto r = lp::parse_object(rec.body);
    ASSERT_TRUE(r.pass) << rec.body << "\n" << r.message;
    const std::string printed = lp::serialize_object(*r.object_id, *r.generation, *r.value);
    const auto again = lp::parse_object(printed);
    ASSERT_TRUE(again.pass) << printed << "\n" << again.message;
    EXPECT_EQ(*again.value, *r.value) << printed;
    ++checked;
  }
  EXPECT_EQ(checked, corpus.size());
}

TEST(ParseObjectProperty, RoundTripOfEscapedStrings) {
  lp::Dict d;
  d.entries["Odd Key#"] = lp::LiteralString{std::string("a(b\\c)\r\n\x01\xff", 10)};
  d.entries["H"] = lp::HexString{std::string("\x00\x7f", 2)};
  d.entries["N"] = lp::Number{-0.25};
  d.entries["Z"] = lp::Null{};
  const lp::PdfValue v{lp::Array{{lp::PdfValue(d), lp::Ref{9, 2}, lp::Number{1e6}}}};
  const auto r = lp::parse_object(lp::serialize_object(4, 0, v));
  ASSERT_TRUE(r.pass) << r.message;
  EXPECT_EQ(*r.value, v);
}

// Fail offsets stay inside the input for fuzzed objects.
TEST(ParseObjectProperty, FuzzedInputsFailWithValidOffsets) {
  const auto corpus = learnfuzz::corpus::synthetic_corpus(200, 9);
  learnfuzz::mutator::FuzzConfig fc;
  fc.fuzz_factor = 10;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    fc.rng_seed = i;
    const std::string text = learnfuzz::mutator::random_fuzz(corpus[i].body, fc);
    const auto r = lp::parse_object(text);
    if (!r.pass) {
      ++failures;
      EXPECT_LE(r.offset, text.size());
      EXPECT_NE(r.error, ParseError::none);
    } else {
      EXPECT_TRUE(r.value);
    }
  }
  EXPECT_GT(failures, 0u);
}

}  // namespace
