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

#ifndef LEARNFUZZ_MUTATOR_HPP_
#define LEARNFUZZ_MUTATOR_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "learnfuzz/error.hpp"
#include "learnfuzz/rng.hpp"

namespace learnfuzz::mutator {

struct FuzzConfig {
  // Length / fuzz_factor bytes are replaced on average.
  double fuzz_factor = 100.0;
  std::uint64_t rng_seed = 0;
  int variants = 10;

  void validate() const {
    if (!(fuzz_factor >= 1.0) || variants < 1) {
      throw Error(Errc::invalid_config,
                  "fuzz_factor must be >= 1 and variants >= 1");
    }
  }
};

struct FuzzResult {
  std::string bytes;
  // Positions that drew a replacement byte (the byte may be unchanged).
  std::vector<std::size_t> positions;
};

/// Blackbox byte replacement: every position independently, with
/// probability 1 / fuzz_factor, gets a uniform byte in [0, 255].
inline FuzzResult random_fuzz_traced(std::string_view data,
                                     const FuzzConfig& config) {
  config.validate();
  if (data.empty()) throw Error(Errc::empty_input, "cannot fuzz empty input");
  Rng rng = make_rng(config.rng_seed, {0x52414e44});
  const double p = 1.0 / config.fuzz_factor;
  FuzzResult out;
  out.bytes.assign(data);
  for (std::size_t i = 0; i < out.bytes.size(); ++i) {
    if (uniform01(rng) < p) {
      out.bytes[i] = static_cast<char>(rng() & 0xFF);
      out.positions.push_back(i);
    }
  }
  return out;
}

inline std::string random_fuzz(std::string_view data, const FuzzConfig& config) {
  return random_fuzz_traced(data, config).bytes;
}

inline std::uint64_t variant_seed(std::uint64_t master, std::size_t source,
                                  int variant) {
  Rng rng = make_rng(master, {0x56415249, source, static_cast<std::uint64_t>(variant)});
  return rng();
}

/// config.variants independent fuzzed copies of every source, source-major.
inline std::vector<std::string> make_variants(std::span<const std::string> objects,
                                              const FuzzConfig& config) {
  config.validate();
  if (objects.empty()) throw Error(Errc::empty_input, "no objects to fuzz");
  std::vector<std::string> out;
  out.reserve(objects.size() * static_cast<std::size_t>(config.variants));
  for (std::size_t s = 0; s < objects.size(); ++s) {
    for (int v = 0; v < config.variants; ++v) {
      FuzzConfig c = config;
      c.rng_seed = variant_seed(config.rng_seed, s, v);
      out.push_back(random_fuzz(objects[s], c));
    }
  }
  return out;
}

}  // namespace learnfuzz::mutator

#endif  // LEARNFUZZ_MUTATOR_HPP_
