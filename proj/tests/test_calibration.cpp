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
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "npball/calibration.hpp"
#include "npball/report.hpp"
#include "npball/verify.hpp"

namespace {

using namespace npball;
namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "npball_calibration_tests";
  fs::create_directories(dir);
  return dir / name;
}

// One pilot run shared by the tests below; the pilot takes a few seconds.
const Calibration& shared() {
  static const Calibration cal = compute_calibration(kDefaultSeed);
  return cal;
}

TEST(Fnv1a, ReferenceVectors) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(fnv1a_hex("foobar"), "85944171f73967e8");
}

TEST(RoundSig, DirectionalSixDigits) {
  EXPECT_EQ(round_sig(0.123456789, true), 0.123457);
  EXPECT_EQ(round_sig(0.123456789, false), 0.123456);
  EXPECT_EQ(round_sig(7156.781, true), 7156.79);
  EXPECT_EQ(round_sig(2.5, true), 2.5);
  EXPECT_EQ(round_sig(0.0, true), 0.0);
  // Directional in value, so rounding down a negative moves away from zero.
  EXPECT_EQ(round_sig(-1.0000004, false), -1.00001);
  EXPECT_EQ(round_sig(-1.0000004, true), -1.0);
}

TEST(Calibration, DeterministicAndLoadable) {
  const Calibration& a = shared();
  const Calibration b = compute_calibration(kDefaultSeed);
  EXPECT_EQ(a.text(), b.text());
  const fs::path path = temp_file("cal.json");
  save_calibration(a, path.string());
  const Calibration c = load_calibration(path.string());
  EXPECT_EQ(c.id(), a.id());
  EXPECT_EQ(c.text(), a.text());
  EXPECT_GT(a.carleson_c_star(), 1.0);
  EXPECT_GT(a.transform_eps(), 0.0);
  EXPECT_GE(a.shell_constant(0.5), 1.0);
  EXPECT_THROW(a.shell_constant(0.3), CalibrationError);
}

TEST(Calibration, SeedOnlyMovesSeededSections) {
  const Calibration& a = shared();
  const Calibration b = compute_calibration(kDefaultSeed + 1);
  EXPECT_NE(a.payload()["monte_carlo"], b.payload()["monte_carlo"]);
  for (const char* key : {"np0", "carleson", "transform", "shell_bound", "collapse", "gap"}) {
    EXPECT_EQ(a.payload()[key], b.payload()[key]) << key;
  }
  EXPECT_NE(a.id(), b.id());
}

TEST(Calibration, CorruptFilesAreRejected) {
  const Calibration& a = shared();
  const fs::path path = temp_file("corrupt.json");
  std::string text = a.text();

  write_text_file(path.string(), text.substr(0, text.size() / 2));
  EXPECT_THROW(load_calibration(path.string()), CalibrationError);

  nlohmann::json j = nlohmann::json::parse(text);
  j["carleson"]["c_star"] = 99.0;  // id no longer matches
  write_text_file(path.string(), j.dump(2));
  EXPECT_THROW(load_calibration(path.string()), CalibrationError);

  j = nlohmann::json::parse(text);
  j["schema"] = "something-else";
  write_text_file(path.string(), j.dump(2));
  EXPECT_THROW(load_calibration(path.string()), CalibrationError);

  // A consistent id over a payload that lacks a section.
  j = nlohmann::json::parse(text);
  j.erase("transform");
  j.erase("id");
  j["id"] = Calibration(j).id();
  write_text_file(path.string(), j.dump(2));
  EXPECT_THROW(load_calibration(path.string()), CalibrationError);

  EXPECT_THROW(load_calibration((path.parent_path() / "missing.json").string()), CalibrationError);
}

TEST(Verify, CatalogAndFiltering) {
  const auto& catalog = check_catalog();
  ASSERT_EQ(catalog.size(), 12u);
  for (std::size_t i = 0; i < catalog.size(); ++i) EXPECT_EQ(catalog[i].number, static_cast<int>(i + 1));

  VerifyOptions options;
  options.only = {"no_such_check"};
  EXPECT_THROW(run_checks(shared(), options), UsageError);

  options.only = {"transform"};
  int callbacks = 0;
  options.on_result = [&](const CheckOutcome&) { ++callbacks; };
  const auto outcomes = run_checks(shared(), options);
  ASSERT_EQ(outcomes.size(), 1u);
  EXPECT_EQ(callbacks, 1);
  EXPECT_EQ(outcomes[0].name, "transform");
  EXPECT_TRUE(outcomes[0].passed) << outcomes[0].message;

  const nlohmann::json summary = verify_summary(outcomes, shared());
  EXPECT_EQ(summary["schema"], kReportSchema);
  EXPECT_EQ(summary["calibration_id"], shared().id());
  EXPECT_TRUE(summary.contains("quad"));
  EXPECT_TRUE(summary.contains("search"));
  EXPECT_EQ(summary["checks"].size(), 1u);
  EXPECT_FALSE(summary["checks"][0]["property"].get<std::string>().empty());
}

}  // namespace
