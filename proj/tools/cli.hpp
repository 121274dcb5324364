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
#ifndef NPBALL_TOOLS_CLI_HPP_
#define NPBALL_TOOLS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "npball/carleson.hpp"
#include "npball/integrate.hpp"
#include "npball/search.hpp"

namespace npball::cli {

// Everything one invocation needs. Saved next to every report so a run can be
// replayed with --config.
struct RunConfig {
  std::string command;
  int n = 1;
  std::string space = "np";  // np | a2p | bergman | sup
  std::vector<double> p;
  std::vector<double> q;
  std::vector<std::string> functions;
  std::string corpus;  // "" or "default"
  std::optional<QuadSpec> quad;  // unset: QuadSpec::for_dimension(n)
  SearchSpec search;
  TubeGrid tube_grid;
  std::string out;
  std::string out_dir;
  std::string calibration;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> only;
  bool dry_run = false;
  bool reproduce = true;

  QuadSpec resolved_quad() const;
  // Throws UsageError.
  void validate() const;
  bool operator==(const RunConfig&) const;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

enum ExitCode : int { kOk = 0, kBadConfig = 1, kNumericFailure = 2, kChecksFailed = 3 };

// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_norm(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_calibrate(const RunConfig& config, std::ostream& out, std::ostream& err);

std::string default_calibration_path();

}  // namespace npball::cli

#endif  // NPBALL_TOOLS_CLI_HPP_
