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

#ifndef LEARNFUZZ_LEARNFUZZ_HPP_
#define LEARNFUZZ_LEARNFUZZ_HPP_

#include "learnfuzz/assembler.hpp"
#include "learnfuzz/campaign.hpp"
#include "learnfuzz/charlm.hpp"
#include "learnfuzz/corpus.hpp"
#include "learnfuzz/error.hpp"
#include "learnfuzz/mutator.hpp"
#include "learnfuzz/pdf/coverage.hpp"
#include "learnfuzz/pdf/host.hpp"
#include "learnfuzz/pdf/lexer.hpp"
#include "learnfuzz/pdf/parser.hpp"
#include "learnfuzz/pdf/value.hpp"
#include "learnfuzz/report.hpp"
#include "learnfuzz/rng.hpp"
#include "learnfuzz/sampler.hpp"
#include "learnfuzz/synthetic.hpp"

#endif  // LEARNFUZZ_LEARNFUZZ_HPP_
