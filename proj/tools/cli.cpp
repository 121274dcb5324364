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
#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "npball/calibration.hpp"
#include "npball/corpus.hpp"
#include "npball/errors.hpp"
#include "npball/literal.hpp"
#include "npball/norms.hpp"
#include "npball/report.hpp"
#include "npball/verify.hpp"

#ifndef NPBALL_DEFAULT_CALIBRATION
#define NPBALL_DEFAULT_CALIBRATION "data/calibration.json"
#endif

namespace npball::cli {

std::string default_calibration_path() { return NPBALL_DEFAULT_CALIBRATION; }

QuadSpec RunConfig::resolved_quad() const {
  QuadSpec spec = quad ? *quad : QuadSpec::for_dimension(n);
  if (seed && !spec.seed) spec.seed = seed;
  return spec;
}

void RunConfig::validate() const {
  if (command != "norm" && command != "verify" && command != "calibrate") {
    throw UsageError("unknown command '" + command + "'");
  }
  if (n < 1) throw UsageError("dimension n must be >= 1");
  if (command == "norm") {
    if (space != "np" && space != "a2p" && space != "bergman" && space != "sup") {
      throw UsageError("space must be one of np, a2p, bergman, sup");
    }
    if ((space == "np" || space == "a2p") && p.empty()) throw UsageError("--p is required");
    if (space == "bergman" && q.empty()) throw UsageError("--q is required");
    for (double v : p) {
      if (!std::isfinite(v) || v < 0.0) throw UsageError("p must be finite and >= 0");
    }
    for (double v : q) {
      if (!std::isfinite(v) || v <= 0.0) throw UsageError("q must be finite and > 0");
    }
    if (functions.empty() && corpus.empty()) throw UsageError("give --fn or --corpus");
    if (!corpus.empty() && corpus != "default") throw UsageError("unknown corpus '" + corpus + "'");
    if (!corpus.empty() && n != 1) throw UsageError("the default corpus is defined for n=1");
  }
  const QuadSpec spec = quad ? *quad : QuadSpec::for_dimension(n);
  const bool mc = spec.backend == Backend::montecarlo ||
                  spec.sphere_rule == SphereRuleKind::monte_carlo;
  if (mc && !seed && !spec.seed) throw UsageError("a Monte Carlo rule needs --seed");
  resolved_quad().validate(n);
  search.validate(n);
  tube_grid.validate();
}

bool RunConfig::operator==(const RunConfig& other) const {
  return nlohmann::json(*this) == nlohmann::json(other);
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = {{"command", c.command},
       {"n", c.n},
       {"space", c.space},
       {"p", c.p},
       {"q", c.q},
       {"functions", c.functions},
       {"corpus", c.corpus},
       {"quad", c.quad ? nlohmann::json(*c.quad) : nlohmann::json(nullptr)},
       {"search", c.search},
       {"tube_grid", c.tube_grid},
       {"out", c.out},
       {"out_dir", c.out_dir},
       {"calibration", c.calibration},
       {"seed", c.seed ? nlohmann::json(*c.seed) : nlohmann::json(nullptr)},
       {"only", c.only},
       {"dry_run", c.dry_run},
       {"reproduce", c.reproduce}};
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  RunConfig d;
  c.command = j.value("command", d.command);
  c.n = j.value("n", d.n);
  c.space = j.value("space", d.space);
  c.p = j.value("p", d.p);
  c.q = j.value("q", d.q);
  c.functions = j.value("functions", d.functions);
  c.corpus = j.value("corpus", d.corpus);
  c.quad.reset();
  if (j.contains("quad") && !j.at("quad").is_null()) c.quad = j.at("quad").get<QuadSpec>();
  c.search = j.contains("search") ? j.at("search").get<SearchSpec>() : d.search;
  c.tube_grid = j.contains("tube_grid") ? j.at("tube_grid").get<TubeGrid>() : d.tube_grid;
  c.out = j.value("out", d.out);
  c.out_dir = j.value("out_dir", d.out_dir);
  c.calibration = j.value("calibration", d.calibration);
  c.seed.reset();
  if (j.contains("seed") && !j.at("seed").is_null()) c.seed = j.at("seed").get<std::uint64_t>();
  c.only = j.value("only", d.only);
  c.dry_run = j.value("dry_run", d.dry_run);
  c.reproduce = j.value("reproduce", d.reproduce);
}

namespace {

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.out.empty()) {
    out << text;
  } else {
    write_text_file(config.out, text);
  }
}

std::vector<FunctionLiteral> load_functions(const RunConfig& config) {
  std::vector<FunctionLiteral> fs;
  if (config.corpus == "default") {
    for (const auto& entry : function_corpus()) fs.push_back(parse_function(entry.literal, 1));
  }
  for (const auto& text : config.functions) fs.push_back(parse_function(text, config.n));
  return fs;
}

}  // namespace

int cmd_norm(const RunConfig& config, std::ostream& out, std::ostream&) {
  config.validate();
  const QuadSpec quad = config.resolved_quad();
  nlohmann::json results = nlohmann::json::array();
  for (const auto& lit : load_functions(config)) {
    auto add = [&](const char* key, double x, const NormEstimate& est) {
      nlohmann::json row = {{"function", lit.text}, {"estimate", est}};
      if (key) row[key] = x;
      results.push_back(std::move(row));
    };
    if (config.space == "np") {
      for (double p : config.p) add("p", p, norm_np(lit.f, p, config.search, quad));
    } else if (config.space == "a2p") {
      for (double p : config.p) add("p", p, norm_a2p(lit.f, p, quad));
    } else if (config.space == "bergman") {
      for (double q : config.q) add("q", q, norm_bergman_type(lit.f, q));
    } else {
      add(nullptr, 0.0, norm_sup(lit.f));
    }
  }
  const nlohmann::json report = {{"schema", kReportSchema},
                                 {"command", "norm"},
                                 {"space", config.space},
                                 {"n", config.n},
                                 {"calibration_id", nullptr},
                                 {"quad", quad},
                                 {"search", config.search},
                                 {"config", config},
                                 {"results", results}};
  emit(config, canonical_text(report), out);
  return kOk;
}

int cmd_calibrate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  const std::uint64_t seed = config.seed.value_or(kDefaultSeed);
  const Calibration cal =
      compute_calibration(seed, [&](const std::string& line) { err << line << '\n'; });
  if (config.dry_run) {
    out << cal.text();
    return kOk;
  }
  const std::string path = config.out.empty() ? std::string("calibration.json") : config.out;
  save_calibration(cal, path);
  out << "wrote " << path << " (id " << cal.id() << ")\n";
  return kOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream&) {
  config.validate();
  const std::string path =
      config.calibration.empty() ? default_calibration_path() : config.calibration;
  // Fail fast: nothing is written unless the calibration loads cleanly.
  const Calibration cal = load_calibration(path);

  VerifyOptions options;
  options.only = config.only;
  options.seed = config.seed.value_or(kDefaultSeed);
  options.reproduce_calibration = config.reproduce;
  options.on_result = [&](const CheckOutcome& o) {
    out << (o.passed ? "PASS" : "FAIL") << "  " << o.number << ' ' << o.name << ": " << o.message
        << '\n'
        << std::flush;
  };
  const std::vector<CheckOutcome> outcomes = run_checks(cal, options);

  bool all = true;
  for (const auto& o : outcomes) all = all && o.passed;
  if (!config.out_dir.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir(config.out_dir);
    fs::create_directories(dir / "tables");
    nlohmann::json summary = verify_summary(outcomes, cal);
    summary["config"] = config;
    write_text_file((dir / "summary.json").string(), canonical_text(summary));
    write_text_file((dir / "timing.json").string(), canonical_text(verify_timing(outcomes)));
    for (const auto& o : outcomes) {
      for (const auto& [name, csv] : o.tables) write_text_file((dir / "tables" / name).string(), csv);
    }
  }
  out << (all ? "all checks passed" : "some checks failed") << '\n';
  return all ? kOk : kChecksFailed;
}

namespace {

struct Flags {
  std::string config_path;
  int n = 1;
  std::string space;
  std::vector<double> p, q;
  std::vector<std::string> fn;
  std::string corpus;
  std::string backend;
  int radial = 0, angular = 0, tube = 0, mc = 0;
  std::uint64_t seed = 0;
  std::string out, out_dir, calibration;
  std::vector<std::string> only;
  bool dry_run = false, no_reproduce = false, print_config = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "RunConfig JSON file; flags override it");
  cmd->add_option("--n", f.n, "complex dimension");
  cmd->add_option("--seed", f.seed, "root seed");
  cmd->add_option("--backend", f.backend, "spectral | quadrature | montecarlo");
  cmd->add_option("--radial-nodes", f.radial);
  cmd->add_option("--angular-nodes", f.angular);
  cmd->add_option("--tube-nodes", f.tube);
  cmd->add_option("--mc-samples", f.mc);
  cmd->add_option("--out", f.out, "output file (default: standard output)");
  cmd->add_flag("--print-config", f.print_config, "print the resolved RunConfig and exit");
}

RunConfig resolve(const std::string& command, CLI::App* cmd, const Flags& f) {
  RunConfig c;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw UsageError("cannot read config '" + f.config_path + "'");
    try {
      c = nlohmann::json::parse(in).get<RunConfig>();
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("bad config '" + f.config_path + "': " + e.what());
    }
  }
  c.command = command;
  auto given = [&](const char* name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--n")) c.n = f.n;
  if (given("--space")) c.space = f.space;
  if (given("--p")) c.p = f.p;
  if (given("--q")) c.q = f.q;
  if (given("--fn")) c.functions = f.fn;
  if (given("--corpus")) c.corpus = f.corpus;
  if (given("--seed")) c.seed = f.seed;
  if (given("--out")) c.out = f.out;
  if (given("--out-dir")) c.out_dir = f.out_dir;
  if (given("--calibration")) c.calibration = f.calibration;
  if (given("--only")) c.only = f.only;
  if (given("--dry-run")) c.dry_run = f.dry_run;
  if (given("--no-reproduce")) c.reproduce = !f.no_reproduce;
  if (given("--backend") || given("--radial-nodes") || given("--angular-nodes") ||
      given("--tube-nodes") || given("--mc-samples")) {
    QuadSpec q = c.quad ? *c.quad
                        : QuadSpec::for_dimension(
                              c.n, given("--backend") ? backend_from_string(f.backend)
                                                      : Backend::spectral);
    if (given("--backend")) q.backend = backend_from_string(f.backend);
    if (given("--radial-nodes")) q.radial_nodes = f.radial;
    if (given("--angular-nodes")) q.angular_nodes = f.angular;
    if (given("--tube-nodes")) q.tube_nodes = f.tube;
    if (given("--mc-samples")) q.mc_samples = f.mc;
    c.quad = q;
  }
  return c;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("npball: N_p spaces on the unit ball", "npball");
  app.require_subcommand(1);
  Flags f;

  CLI::App* norm = app.add_subcommand("norm", "compute a norm of one or more functions");
  add_common(norm, f);
  norm->add_option("--space", f.space, "np | a2p | bergman | sup");
  norm->add_option("--p", f.p, "exponent(s)")->delimiter(',');
  norm->add_option("--q", f.q, "growth exponent(s)")->delimiter(',');
  norm->add_option("--fn", f.fn, "function literal (repeatable)");
  norm->add_option("--corpus", f.corpus, "'default' for the built-in test functions");

  CLI::App* verify = app.add_subcommand("verify", "run the verification checks");
  add_common(verify, f);
  verify->add_option("--calibration", f.calibration, "calibration file");
  verify->add_option("--only", f.only, "check name(s)")->delimiter(',');
  verify->add_option("--out-dir", f.out_dir, "write summary.json, timing.json and CSV tables");
  verify->add_flag("--no-reproduce", f.no_reproduce, "skip recomputing the calibration");

  CLI::App* calibrate = app.add_subcommand("calibrate", "run the pilot and write thresholds");
  add_common(calibrate, f);
  calibrate->add_flag("--dry-run", f.dry_run, "print the thresholds, write nothing");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kBadConfig;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    const RunConfig config = resolve(cmd->get_name(), cmd, f);
    if (f.print_config) {
      config.validate();
      out << canonical_text(config);
      return kOk;
    }
    if (cmd == norm) return cmd_norm(config, out, err);
    if (cmd == verify) return cmd_verify(config, out, err);
    return cmd_calibrate(config, out, err);
  } catch (const UsageError& e) {
    err << "npball: " << e.what() << '\n';
    return kBadConfig;
  } catch (const NumericError& e) {
    err << "npball: numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::exception& e) {
    err << "npball: " << e.what() << '\n';
    return kBadConfig;
  }
}

}  // namespace npball::cli
