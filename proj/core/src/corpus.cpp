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
#include "npball/corpus.hpp"

namespace npball {

const std::vector<CorpusEntry>& function_corpus() {
  static const std::vector<CorpusEntry> corpus = {
      {"one", "1", false},
      {"z", "z", false},
      {"z2", "z^2", false},
      {"cubic", "1 + 2z + z^3", false},
      {"half_shift", "(1 + z)/2", false},
      {"z6", "z^6", false},
      {"quartic", "1 - z + 0.5 z^4", false},
      {"complex_quintic", "(0.3+0.4i) + (1-0.5i) z^2 + 0.25i z^5", false},
      {"arctan5", "z - z^3/3 + z^5/5", false},
      {"octic", "2 + i z^4 - z^8", false},
      {"gap_unit_K6", "gap:power:beta=0:K=6", true},
      {"gap_f1_K5", "gap:f1:K=5", true},
  };
  return corpus;
}

const std::vector<std::pair<std::string, std::string>>& multiplier_corpus() {
  static const std::vector<std::pair<std::string, std::string>> pairs = {
      {"1", "1 + 2z + z^3"},
      {"2", "z - z^3/3 + z^5/5"},
      {"0.5i", "(1 + z)/2"},
      {"(1 + z)/2", "1"},
      {"z", "1"},
      {"z^2", "1 + 2z + z^3"},
      {"(1 - z)/2", "z^2"},
      {"0.5 + 0.5 z^3", "1 - z + 0.5 z^4"},
      {"(2 + z)/3", "2 + i z^4 - z^8"},
      {"0.7 + 0.3i z", "(0.3+0.4i) + (1-0.5i) z^2 + 0.25i z^5"},
  };
  return pairs;
}

HoloFunction corpus_function(const CorpusEntry& entry, int n) {
  return parse_function(entry.literal, n).f;
}

}  // namespace npball
