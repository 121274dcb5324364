// Copyright 2026 The npball Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef NPBALL_CORPUS_HPP_
#define NPBALL_CORPUS_HPP_

#include <string>
#include <utility>
#include <vector>

#include "npball/literal.hpp"

namespace npball {

struct CorpusEntry {
  std::string name;
  std::string literal;
  bool gap = false;  // a truncated gap series rather than a written polynomial
};

// The twelve n=1 test functions: ten explicit polynomials and two truncated
// gap series.
const std::vector<CorpusEntry>& function_corpus();

// Ten (u, f) pairs for the multiplier inequality; the first three have
// constant u.
const std::vector<std::pair<std::string, std::string>>& multiplier_corpus();

HoloFunction corpus_function(const CorpusEntry& entry, int n = 1);

}  // namespace npball

#endif  // NPBALL_CORPUS_HPP_
