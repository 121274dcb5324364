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
#ifndef NPBALL_CALIBRATION_HPP_
#define NPBALL_CALIBRATION_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "npball/errors.hpp"
#include "npball/norms.hpp"

namespace npball {

inline constexpr char kCalibrationSchema[] = "npball-calibration/1";
inline constexpr std::uint64_t kDefaultSeed = 20260101;

// Missing, unparsable, or tampered calibration file.
class CalibrationError : public UsageError {
 public:
  using UsageError::UsageError;
};

/// Thresholds fixed by a high-resolution pilot run. The payload is canonical
/// JSON; id is the FNV-1a hash of its compact dump.
class Calibration {
 public:
  explicit Calibration(nlohmann::json payload);

  const nlohmann::json& payload() const { return payload_; }
  const std::string& id() const { return id_; }
  // Pretty-printed payload plus id, newline terminated. Byte-stable.
  std::string text() const;

  std::uint64_t seed() const;
  Np0Thresholds np0_thresholds() const;
  double np0_p() const;
  double carleson_p() const;
  double carleson_c_star() const;
  double carleson_vanishing_eps() const;
  double transform_eps() const;
  double shell_constant(double p) const;
  std::pair<double, double> collapse_bracket() const;

 private:
  nlohmann::json payload_;
  std::string id_;
};

std::string fnv1a_hex(const std::string& data);

// Rounds to six significant digits, away from zero when up is true.
double round_sig(double x, bool up);

using ProgressFn = std::function<void(const std::string&)>;

// Runs the pilot (every node count x4) and returns the thresholds. Throws
// NumericError when a pilot quantity is not finite.
Calibration compute_calibration(std::uint64_t seed, const ProgressFn& progress = {});

Calibration load_calibration(const std::string& path);
void save_calibration(const Calibration& cal, const std::string& path);

// Pilot specs, shared with the checks that reproduce them.
QuadSpec pilot_quad_spec(int n = 1);
SearchSpec pilot_search_spec();

}  // namespace npball

#endif  // NPBALL_CALIBRATION_HPP_
