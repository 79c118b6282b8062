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

#ifndef LEARNFUZZ_SAMPLER_HPP_
#define LEARNFUZZ_SAMPLER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "learnfuzz/charlm.hpp"
#include "learnfuzz/error.hpp"
#include "learnfuzz/rng.hpp"

namespace learnfuzz::sampler {

enum class Mode { no_sample, sample, sample_space, sample_fuzz };

constexpr std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::no_sample: return "nosample";
    case Mode::sample: return "sample";
    case Mode::sample_space: return "samplespace";
    case Mode::sample_fuzz: return "samplefuzz";
  }
  return "unknown";
}

inline std::optional<Mode> parse_mode(std::string_view s) {
  for (Mode m : {Mode::no_sample, Mode::sample, Mode::sample_space,
                 Mode::sample_fuzz}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

struct GenConfig {
  Mode mode = Mode::sample;
  std::string prefix = "obj ";
  std::string stop_suffix = "endobj";
  std::size_t max_len = 1500;
  double t_fuzz = 0.9;
  double p_t = 0.9;
  std::uint64_t rng_seed = 0;
  int max_restarts = 64;

  void validate() const {
    if (prefix.empty() || stop_suffix.empty() || max_len <= prefix.size() ||
        max_restarts < 1 || !(t_fuzz >= 0.0 && t_fuzz <= 1.0) ||
        !(p_t >= 0.0 && p_t <= 1.0)) {
      throw Error(Errc::invalid_config, "invalid generation config");
    }
  }
};

struct GeneratedObject {
  std::string text;
  Mode mode = Mode::sample;
  int restarts = 0;
  std::vector<std::size_t> fuzzed_positions;
};

/// PDF whitespace: NUL, TAB, LF, FF, CR, SPACE.
constexpr bool is_whitespace(char c) {
  return c == '\0' || c == '\t' || c == '\n' || c == '\f' || c == '\r' ||
         c == ' ';
}

// Ties resolve to the lowest vocabulary index.
inline int argmax(const charlm::Vector& p) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(p.size()); ++k) {
    if (p[k] > p[best]) best = k;
  }
  return best;
}

inline int argmin(const charlm::Vector& p) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(p.size()); ++k) {
    if (p[k] < p[best]) best = k;
  }
  return best;
}

/// Inverse-CDF draw with one uniform from `rng`.
inline int sample_index(const charlm::Vector& p, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  int last_positive = 0;
  for (int k = 0; k < static_cast<int>(p.size()); ++k) {
    if (p[k] > 0.0) last_positive = k;
    acc += p[k];
    if (u < acc) return k;
  }
  return last_positive;
}

namespace detail {

// Random streams: characters and fuzz coins never share an engine, so the
// character sequence of a seed is the same whether or not coins are drawn.
inline Rng char_stream(std::uint64_t seed) { return make_rng(seed, {0x43484152}); }
inline Rng coin_stream(std::uint64_t seed) { return make_rng(seed, {0x434f494e}); }

inline void check_vocab(const charlm::ModelParams& params, const GenConfig& c) {
  for (char ch : c.prefix) params.vocab.index_of(ch);
  for (char ch : c.stop_suffix) params.vocab.index_of(ch);
}

template <typename NextChar>
GeneratedObject run(const charlm::ModelParams& params, const GenConfig& config,
                    NextChar&& next_char) {
  config.validate();
  check_vocab(params, config);
  GeneratedObject out;
  out.mode = config.mode;
  charlm::Stepper stepper(params);
  auto restart = [&] {
    stepper.reset();
    out.text = config.prefix;
    out.fuzzed_positions.clear();
    for (char ch : config.prefix) stepper.step(ch);
  };
  restart();
  while (!std::string_view(out.text).ends_with(config.stop_suffix)) {
    const auto& dist = stepper.distribution();
    const int idx = next_char(dist, out);
    out.text += params.vocab.at(static_cast<std::size_t>(idx));
    if (out.text.size() > config.max_len) {
      if (++out.restarts > config.max_restarts) {
        throw Error(Errc::non_termination,
                    "no '" + config.stop_suffix + "' after " +
                        std::to_string(config.max_restarts) + " restarts");
      }
      restart();
      continue;
    }
    stepper.step(idx);
  }
  return out;
}

}  // namespace detail

/// Sampling with fuzzing: at every step draw c ~ p and a coin in [0, 1);
/// when coin > t_fuzz and p(c) > p_t, emit the least likely character of
/// the same distribution instead.
inline GeneratedObject sample_fuzz(const charlm::ModelParams& params,
                                   const GenConfig& config) {
  if (config.mode != Mode::sample_fuzz) {
    throw Error(Errc::invalid_config, "sample_fuzz requires mode samplefuzz");
  }
  Rng chars = detail::char_stream(config.rng_seed);
  Rng coins = detail::coin_stream(config.rng_seed);
  return detail::run(params, config,
                     [&](const charlm::Vector& p, GeneratedObject& out) {
                       int c = sample_index(p, chars);
                       const double p_fuzz = uniform01(coins);
                       if (p_fuzz > config.t_fuzz && p[c] > config.p_t) {
                         c = argmin(p);
                         out.fuzzed_positions.push_back(out.text.size());
                       }
                       return c;
                     });
}

/// Seed of the index-th object in a batch generated from one master seed.
inline std::uint64_t object_seed(std::uint64_t master, std::size_t index) {
  Rng rng = make_rng(master, {0x4f424a, index});
  return rng();
}

/// Autoregressive generation from config.prefix until config.stop_suffix.
inline GeneratedObject generate(const charlm::ModelParams& params,
                                const GenConfig& config) {
  switch (config.mode) {
    case Mode::no_sample:
      return detail::run(params, config,
                         [](const charlm::Vector& p, GeneratedObject&) {
                           return argmax(p);
                         });
    case Mode::sample: {
      Rng chars = detail::char_stream(config.rng_seed);
      return detail::run(params, config,
                         [&](const charlm::Vector& p, GeneratedObject&) {
                           return sample_index(p, chars);
                         });
    }
    case Mode::sample_space: {
      Rng chars = detail::char_stream(config.rng_seed);
      return detail::run(params, config,
                         [&](const charlm::Vector& p, GeneratedObject& out) {
                           return is_whitespace(out.text.back())
                                      ? sample_index(p, chars)
                                      : argmax(p);
                         });
    }
    case Mode::sample_fuzz:
      return sample_fuzz(params, config);
  }
  throw Error(Errc::invalid_config, "unknown mode");
}

}  // namespace learnfuzz::sampler

#endif  // LEARNFUZZ_SAMPLER_HPP_
