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
#ifndef NPBALL_REPORT_HPP_
#define NPBALL_REPORT_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "npball/ball.hpp"

namespace npball {

inline constexpr char kReportSchema[] = "npball-report/1";

nlohmann::json complex_json(Complex c);
nlohmann::json point_json(const CVector& z);

// Pretty JSON with a trailing newline; key order is sorted, so equal values
// give equal bytes.
std::string canonical_text(const nlohmann::json& j);

// Writes the whole file or throws UsageError.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace npball

#endif  // NPBALL_REPORT_HPP_
