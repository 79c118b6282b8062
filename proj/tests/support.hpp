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

#ifndef LEARNFUZZ_TESTS_SUPPORT_HPP_
#define LEARNFUZZ_TESTS_SUPPORT_HPP_

#include <memory>

#include "learnfuzz/charlm.hpp"
#include "learnfuzz/corpus.hpp"
#include "learnfuzz/synthetic.hpp"

namespace learnfuzz::testing {

// Small model trained once per test binary on the synthetic corpus.
inline std::shared_ptr<const charlm::ModelParams> small_model() {
  static const auto model = [] {
    const auto corpus = corpus::synthetic_corpus(400, 77);
    const auto set = corpus::build_windows(corpus, 64);
    auto cfg = charlm::TrainConfig::tiny();
    cfg.hidden_size = 24;
    cfg.epochs = 10;
    cfg.checkpoint_epochs = {10};
    return std::make_shared<const charlm::ModelParams>(
        charlm::train(set, cfg).back().params);
  }();
  return model;
}

}  // namespace learnfuzz::testing

#endif  // LEARNFUZZ_TESTS_SUPPORT_HPP_
