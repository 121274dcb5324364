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
#include "npball/report.hpp"

#include <fstream>

#include "npball/errors.hpp"

namespace npball {

nlohmann::json complex_json(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }

nlohmann::json point_json(const CVector& z) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < z.size(); ++i) out.push_back(complex_json(z[i]));
  return out;
}

std::string canonical_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  out << text;
  out.close();
  if (!out) throw UsageError("failed writing " + path);
}

}  // namespace npball
