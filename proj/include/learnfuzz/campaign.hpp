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

#ifndef LEARNFUZZ_CAMPAIGN_HPP_
#define LEARNFUZZ_CAMPAIGN_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <exception>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "learnfuzz/assembler.hpp"
#include "learnfuzz/charlm.hpp"
#include "learnfuzz/corpus.hpp"
#include "learnfuzz/error.hpp"
#include "learnfuzz/mutator.hpp"
#include "learnfuzz/pdf/coverage.hpp"
#include "learnfuzz/pdf/host.hpp"
#include "learnfuzz/rng.hpp"
#include "learnfuzz/sampler.hpp"

namespace learnfuzz::campaign {

/// Draws objects from an existing corpus.
struct BaselineGenerator {
  std::vector<corpus::ObjectRecord> corpus;
};

/// Generates objects from a trained model; gen.mode selects the strategy and
/// gen.rng_seed is replaced per object.
struct ModelGenerator {
  std::shared_ptr<const charlm::ModelParams> params;
  sampler::GenConfig gen;
  std::optional<int> epoch;
};

using Generator = std::variant<BaselineGenerator, ModelGenerator>;

struct CampaignConfig {
  std::string name;
  Generator generator;
  std::optional<mutator::FuzzConfig> post_mutation;
  std::vector<int> hosts{1, 2, 3};
  std::size_t n_objects = 500;
  std::uint64_t rng_seed = 1;

  void validate() const {
    if (n_objects < 1) throw Error(Errc::invalid_config, "n_objects must be >= 1");
    if (hosts.empty()) throw Error(Errc::invalid_config, "no hosts selected");
    for (int h : hosts) {
      if (h < 1 || h > 3) throw Error(Errc::invalid_config, "hosts are 1, 2 or 3");
    }
    if (const auto* b = std::get_if<BaselineGenerator>(&generator)) {
      if (b->corpus.empty()) throw Error(Errc::invalid_config, "empty baseline corpus");
    }
    if (const auto* m = std::get_if<ModelGenerator>(&generator)) {
      if (!m->params) throw Error(Errc::invalid_config, "model generator without params");
      m->gen.validate();
    }
    if (post_mutation) post_mutation->validate();
  }
};

struct TestRecord {
  std::size_t test_id = 0;
  std::size_t input_id = 0;
  int host = 0;
  bool pass = false;
  std::string error_code;  // empty on pass
  pdf::CoverageSet coverage;
};

struct CrashRecord {
  std::size_t test_id = 0;
  std::string diagnostic;
};

struct CampaignResult {
  std::string name;
  std::string generator;  // "baseline" or a sampler mode name
  std::optional<int> epoch;
  bool mutated = false;
  std::vector<int> hosts;
  std::vector<std::string> inputs;
  std::vector<TestRecord> records;  // sorted by test_id
  double pass_rate = 0.0;
  pdf::CoverageSet coverage;
  std::vector<CrashRecord> crashes;

  std::size_t passes() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(),
                      [](const TestRecord& r) { return r.pass; }));
  }

  pdf::CoverageSet host_coverage(int host) const {
    pdf::CoverageSet out;
    for (const auto& r : records) {
      if (r.host == host) out.merge(r.coverage);
    }
    return out;
  }
};

/// Outcome of one assembled file under the reference parser.
struct Evaluation {
  bool pass = false;
  std::string error_code;
  // One "PARSE-ERROR: ..." line per problem; pass iff empty.
  std::vector<std::string> log;
  pdf::CoverageSet coverage;
};

/// Appends `object` to `host`, then runs the structural parse (which also
/// parses every object, including the appended one). Any error line fails
/// the test, mirroring a grep over the parser's log.
inline Evaluation evaluate(const assembler::HostFile& host,
                           std::string_view object) {
  Evaluation ev;
  auto error = [&](std::string code, const std::string& detail) {
    if (ev.error_code.empty()) ev.error_code = code;
    ev.log.push_back("PARSE-ERROR: " + code + ": " + detail);
  };
  std::string file;
  try {
    file = assembler::append_object(host, object);
  } catch (const Error& e) {
    if (e.code() != Errc::object_body_unusable) throw;
    // The object never reaches a file; the oracle still sees its bytes.
    ev.coverage = pdf::parse_object(object, pdf::ParseOptions{.strict = false}).coverage;
    error("object-body-unusable", e.what());
    return ev;
  }
  auto parsed = pdf::try_parse_host(file);
  ev.coverage = parsed.coverage;
  if (!parsed.host) {
    error("host-malformed", parsed.error + " at offset " +
                                std::to_string(parsed.error_offset));
    return ev;
  }
  for (const auto& body : parsed.host->bodies) {
    for (const auto& obj : body.objects) {
      if (!obj.outcome.pass) {
        error(std::string(pdf::to_string(obj.outcome.error)),
              "object " + std::to_string(obj.object_id) + " at offset " +
                  std::to_string(obj.offset + obj.outcome.offset) + ": " +
                  obj.outcome.message);
      } else if (!obj.header_matches) {
        error("header-mismatch", "object " + std::to_string(obj.object_id) +
                                     " header disagrees with xref entry");
      }
    }
  }
  const auto resolved = parsed.host->resolve(host.last_object_id);
  if (!resolved || !resolved->object ||
      resolved->body_index + 1 != parsed.host->bodies.size() ||
      resolved->entry.generation != host.last_generation + 1) {
    error("unresolved-object", "appended object does not resolve");
  }
  ev.pass = ev.log.empty();
  return ev;
}

namespace detail {

inline std::vector<std::string> produce_objects(const CampaignConfig& config) {
  std::vector<std::string> objects;
  objects.reserve(config.n_objects);
  if (const auto* b = std::get_if<BaselineGenerator>(&config.generator)) {
    Rng rng = make_rng(config.rng_seed, {0x42415345});
    std::vector<std::size_t> order(b->corpus.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    learnfuzz::shuffle(order, rng);
    for (std::size_t i = 0; i < config.n_objects; ++i) {
      objects.push_back(b->corpus[order[i % order.size()]].body);
    }
  }
  return objects;
}

}  // namespace detail

/// Generates (or draws) n_objects objects, optionally fuzzes each into
/// post_mutation->variants copies, appends every input to every selected
/// host and evaluates it. Reproducible from rng_seed.
inline CampaignResult run_campaign(const CampaignConfig& config,
                                   std::span<const assembler::HostFile> hosts) {
  config.validate();
  if (hosts.size() < 3) throw Error(Errc::invalid_config, "three hosts required");
  CampaignResult result;
  result.name = config.name;
  result.hosts = config.hosts;
  result.mutated = config.post_mutation.has_value();

  // Inputs that could not be generated are kept as failed tests.
  std::vector<std::optional<std::string>> objects;
  if (const auto* m = std::get_if<ModelGenerator>(&config.generator)) {
    result.generator = std::string(sampler::to_string(m->gen.mode));
    result.epoch = m->epoch;
    for (std::size_t i = 0; i < config.n_objects; ++i) {
      sampler::GenConfig g = m->gen;
      g.rng_seed = sampler::object_seed(config.rng_seed, i);
      try {
        objects.emplace_back(sampler::generate(*m->params, g).text);
      } catch (const Error& e) {
        if (e.code() != Errc::non_termination) throw;
        objects.emplace_back(std::nullopt);
      }
    }
  } else {
    result.generator = "baseline";
    for (auto& o : detail::produce_objects(config)) objects.emplace_back(std::move(o));
  }

  std::vector<std::optional<std::string>> inputs;
  if (config.post_mutation) {
    for (std::size_t s = 0; s < objects.size(); ++s) {
      for (int v = 0; v < config.post_mutation->variants; ++v) {
        if (!objects[s] || objects[s]->empty()) {
          inputs.emplace_back(std::nullopt);
          continue;
        }
        mutator::FuzzConfig f = *config.post_mutation;
        f.rng_seed = mutator::variant_seed(
            config.post_mutation->rng_seed ^ config.rng_seed, s, v);
        inputs.emplace_back(mutator::random_fuzz(*objects[s], f));
      }
    }
  } else {
    inputs = std::move(objects);
  }

  std::size_t test_id = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    result.inputs.push_back(inputs[i].value_or(std::string()));
    for (int h : config.hosts) {
      TestRecord rec;
      rec.test_id = test_id++;
      rec.input_id = i;
      rec.host = h;
      if (!inputs[i]) {
        rec.error_code = "non-termination";
      } else {
        try {
          Evaluation ev = evaluate(hosts[static_cast<std::size_t>(h - 1)], *inputs[i]);
          rec.pass = ev.pass;
          rec.error_code = ev.error_code;
          rec.coverage = std::move(ev.coverage);
        } catch (const std::exception& e) {
          rec.error_code = "crash";
          result.crashes.push_back(CrashRecord{rec.test_id, e.what()});
        }
      }
      result.coverage.merge(rec.coverage);
      result.records.push_back(std::move(rec));
    }
  }
  result.pass_rate = result.records.empty()
                         ? 0.0
                         : static_cast<double>(result.passes()) /
                               static_cast<double>(result.records.size());
  return result;
}

inline CampaignResult run_campaign(const CampaignConfig& config) {
  static const std::array<assembler::HostFile, 3> kHosts = assembler::make_hosts();
  return run_campaign(config, kHosts);
}

/// cell (r, c) = |coverage(r) \ coverage(c)|.
inline std::vector<std::vector<std::size_t>> overlap_matrix(
    std::span<const CampaignResult> results) {
  if (results.empty()) throw Error(Errc::invalid_config, "no results");
  std::vector<std::vector<std::size_t>> m(
      results.size(), std::vector<std::size_t>(results.size(), 0));
  for (std::size_t r = 0; r < results.size(); ++r) {
    for (std::size_t c = 0; c < results.size(); ++c) {
      if (r != c) m[r][c] = results[r].coverage.difference_size(results[c].coverage);
    }
  }
  return m;
}

}  // namespace learnfuzz::campaign

#endif  // LEARNFUZZ_CAMPAIGN_HPP_
