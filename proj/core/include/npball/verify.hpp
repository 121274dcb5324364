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
#ifndef NPBALL_VERIFY_HPP_
#define NPBALL_VERIFY_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "npball/calibration.hpp"

namespace npball {

struct CheckOutcome {
  int number = 0;
  std::string name;
  std::string property;
  bool passed = false;
  std::string message;
  nlohmann::json details;
  std::vector<std::pair<std::string, std::string>> tables;  // CSV file name, content
  double seconds = 0.0;
};

struct VerifyOptions {
  std::vector<std::string> only;  // empty: every check
  std::uint64_t seed = kDefaultSeed;
  // Recompute the calibration and compare it byte for byte with the loaded
  // one (used by the carleson and np0 checks).
  bool reproduce_calibration = true;
  std::function<void(const CheckOutcome&)> on_result;
};

struct CheckInfo {
  int number;
  std::string name;
  std::string property;
};

const std::vector<CheckInfo>& check_catalog();

// Throws UsageError for unknown names in options.only.
std::vector<CheckOutcome> run_checks(const Calibration& cal, const VerifyOptions& options);

// Deterministic summary (no timings) and a separate timing object.
nlohmann::json verify_summary(const std::vector<CheckOutcome>& outcomes, const Calibration& cal);
nlohmann::json verify_timing(const std::vector<CheckOutcome>& outcomes);

}  // namespace npball

#endif  // NPBALL_VERIFY_HPP_
