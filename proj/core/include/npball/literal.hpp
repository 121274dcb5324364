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
#ifndef NPBALL_LITERAL_HPP_
#define NPBALL_LITERAL_HPP_

#include <optional>
#include <string>

#include "npball/gap.hpp"
#include "npball/holo.hpp"

namespace npball {

// Polynomial expressions in z (n=1) or z1..zn: sums, products (explicit or
// implicit), nonnegative integer powers, division by numeric constants,
// parentheses, and complex numbers written as 0.5, 2i, 1.5e-3 i or i.
//   "1 + 2z + z^3", "(0.3+0.4i) + (1-0.5i) z^2", "z1 z2^2 - 0.5 i z1"
Polynomial parse_polynomial(const std::string& text, int n);

// Gap series literals "gap:<rule>[:key=value]*" with rules
//   f1 (b_k = 2^{k(n+1)/2}), f2 (needs p1; b_k = 2^{k(1+p1)/2}),
//   power (needs beta; b_k = scale 2^{k beta}), and keys K, c, base, start,
//   scale. m_k = start * base^k defaults to 2^k.
struct GapLiteral {
  GapSpec spec;
  int K = 0;
};
GapLiteral parse_gap_literal(const std::string& text, int n);

struct FunctionLiteral {
  std::string text;
  HoloFunction f = HoloFunction::zero(1);
  std::optional<GapLiteral> gap;
};

// Accepts polynomial expressions, gap literals, and JSON:
//   {"n": 1, "terms": [{"alpha": [2], "re": 1, "im": 0}]}
//   {"gap": {"n": 1, "b_rule": {...}, "m_rule": {...}, "c": 2, "K": 8}}
FunctionLiteral parse_function(const std::string& text, int n);

}  // namespace npball

#endif  // NPBALL_LITERAL_HPP_
