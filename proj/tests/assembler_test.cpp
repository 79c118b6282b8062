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

#include "learnfuzz/assembler.hpp"
#include "learnfuzz/corpus.hpp"
#include "learnfuzz/error.hpp"
#include "learnfuzz/pdf/host.hpp"
#include "learnfuzz/synthetic.hpp"

namespace la = learnfuzz::assembler;
namespace lp = learnfuzz::pdf;

namespace {

const std::array<la::HostFile, 3>& hosts() {
  static const auto h = la::make_hosts();
  return h;
}

TEST(AppendObject, OverridesLastIdWithNextGeneration) {
  const auto& h = hosts()[0];
  const std::string out = la::append_object(h, "obj << /Type /Pages >> endobj");
  ASSERT_TRUE(out.starts_with(h.bytes));
  const auto parse = lp::parse_host(out);
  ASSERT_EQ(parse.bodies.size(), 2u);
  const auto r = parse.resolve(5);
  ASSERT_TRUE(r && r->object);
  EXPECT_EQ(r->body_index, 1u);
  EXPECT_EQ(r->entry.generation, 1u);
  ASSERT_TRUE(r->object->outcome.pass) << r->object->outcome.message;
  EXPECT_TRUE(r->object->header_matches);
  EXPECT_EQ(r->object->outcome.value->as<lp::Dict>().find("Type")->as<lp::Name>().text,
            "Pages");
  EXPECT_EQ(out.substr(r->entry.offset, 11), "5 1 obj << ");
  const auto& trailer = parse.last_trailer().dict;
  EXPECT_EQ(trailer.find("Size")->as<lp::Number>().value, 6);
  EXPECT_EQ(trailer.find("Prev")->as<lp::Number>().value,
            static_cast<double>(h.last_trailer.startxref));
}

TEST(AppendObject, XrefEntriesAreTwentyBytes) {
  const std::string out = la::append_object(hosts()[1], "obj 1 endobj");
  const auto xref = out.rfind("\nxref\n") + 1;
  const auto sub_end = out.find('\n', xref + 5);
  const std::string entry = out.substr(sub_end + 1, 20);
  EXPECT_EQ(entry.size(), 20u);
  EXPECT_EQ(entry.substr(10, 7), " 00001 ");
  EXPECT_EQ(entry.substr(17), "n\r\n");
}

TEST(AppendObject, TwiceGivesGenerationTwo) {
  const auto& h = hosts()[0];
  const std::string once = la::append_object(h, "obj (first) endobj");
  const auto h1 = la::HostFile::from_bytes(once, "once");
  EXPECT_EQ(h1.last_generation, 1u);
  const std::string twice = la::append_object(h1, "obj (second) endobj");
  const auto parse = lp::parse_host(twice);
  ASSERT_EQ(parse.bodies.size(), 3u);
  const auto r = parse.resolve(5);
  ASSERT_TRUE(r && r->object);
  EXPECT_EQ(r->entry.generation, 2u);
  EXPECT_EQ(r->object->outcome.value->as<lp::LiteralString>().bytes, "second");
}

TEST(AppendObject, FullHeaderIsReplaced) {
  const auto& h = hosts()[2];
  const std::string out = la::append_object(h, "88 0 obj (Related Work) endobj");
  const auto r = lp::parse_host(out).resolve(h.last_object_id);
  ASSERT_TRUE(r && r->object);
  EXPECT_TRUE(r->object->outcome.pass);
  EXPECT_EQ(*r->object->outcome.object_id, h.last_object_id);
}

TEST(AppendObject, IllFormedBodyStillYieldsParsableHost) {
  for (const auto& h : hosts()) {
    const std::string out = la::append_object(h, "obj << /Type [ 1 2 endobj");
    const auto res = lp::try_parse_host(out);
    ASSERT_TRUE(res.host) << h.name << ": " << res.error;
    const auto r = res.host->resolve(h.last_object_id);
    ASSERT_TRUE(r && r->object);
    EXPECT_FALSE(r->object->outcome.pass);
  }
}

TEST(AppendObject, DamagedHeaderKeepsBytes) {
  const auto& h = hosts()[0];
  const std::string out = la::append_object(h, "ob# 1 endobj obj");
  EXPECT_TRUE(lp::try_parse_host(out).host);
}

TEST(AppendObject, BodyWithoutMarkersIsUnusable) {
  try {
    la::append_object(hosts()[0], "<< /Type /Page >>");
    FAIL();
  } catch (const learnfuzz::Error& e) {
    EXPECT_EQ(e.code(), learnfuzz::Errc::object_body_unusable);
  }
}

TEST(AppendObject, ExtractedObjectsRoundTrip) {
  const auto& h = hosts()[0];
  const std::vector<std::string> bodies = {
      "obj [680.6 680.6] endobj", "obj (Related Work) endobj",
      "obj << /Type /Pages /Count 0 >> endobj"};
  std::string file = h.bytes;
  auto host = h;
  for (const auto& b : bodies) {
    file = la::append_object(host, b);
    host = la::HostFile::from_bytes(file, "chain");
  }
  const auto all = learnfuzz::corpus::extract_objects(file);
  ASSERT_GE(all.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& rec = all[all.size() - 3 + i];
    EXPECT_EQ(rec.object_id, 5u);
    EXPECT_EQ(rec.generation, i + 1);
    EXPECT_EQ(rec.body, std::to_string(5) + " " + std::to_string(i + 1) + " " + bodies[i]);
  }
}

// Offsets in every appended xref equal the real byte positions.
TEST(AppendObjectProperty, PureAppendAndExactOffsets) {
  const auto corpus = learnfuzz::corpus::synthetic_corpus(150, 21);
  for (const auto& h : hosts()) {
    for (const auto& rec : corpus) {
      const std::string out = la::append_object(h, rec.body);
      ASSERT_EQ(out.compare(0, h.bytes.size(), h.bytes), 0);
      const auto parse = lp::parse_host(out);
      const auto r = parse.resolve(h.last_object_id);
      ASSERT_TRUE(r && r->object);
      const std::string head = std::to_string(h.last_object_id) + " " +
                               std::to_string(h.last_generation + 1) + " obj";
      EXPECT_EQ(out.substr(r->entry.offset, head.size()), head);
      EXPECT_TRUE(r->object->outcome.pass) << rec.body;
    }
  }
}

}  // namespace
