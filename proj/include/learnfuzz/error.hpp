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

#ifndef LEARNFUZZ_ERROR_HPP_
#define LEARNFUZZ_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace learnfuzz {

enum class Errc {
  corpus_too_small,
  unknown_character,
  corrupt_checkpoint,
  divergence,
  non_termination,
  empty_input,
  host_malformed,
  object_body_unusable,
  invalid_config,
  io,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::corpus_too_small: return "corpus-too-small";
    case Errc::unknown_character: return "unknown-character";
    case Errc::corrupt_checkpoint: return "corrupt-file";
    case Errc::divergence: return "divergence";
    case Errc::non_termination: return "non-termination";
    case Errc::empty_input: return "empty-input";
    case Errc::host_malformed: return "host-malformed";
    case Errc::object_body_unusable: return "object-body-unusable";
    case Errc::invalid_config: return "invalid-config";
    case Errc::io: return "io-error";
  }
  return "unknown";
}

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace learnfuzz

#endif  // LEARNFUZZ_ERROR_HPP_
