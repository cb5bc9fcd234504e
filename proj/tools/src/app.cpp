/* Copyright 2026 The Spinflip Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "spinflip_cli/app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>

#include "spinflip/errors.hpp"
#include "spinflip/export.hpp"
#include "spinflip_cli/config.hpp"
#include "spinflip_cli/manifest.hpp"
#include "spinflip_cli/pipelines.hpp"

#ifndef SPINFLIP_VERSION
#define SPINFLIP_VERSION "0.0.0"
#endif

namespace spinflip::cli {

namespace {

struct Subcommand {
  const char* name;
  const char* description;
  std::vector<std::string> keys;
};

const std::vector<Subcommand>& subcommands() {
  static const std::vector<Subcommand> subs{
      {"flip", "Synthesize the (kappa, eta) flip field and integrate one or more spins",
       {"gamma", "gammas", "b0", "tf", "kappa", "eta", "samples"}},
      {"synth", "Synthesize a field with one of the three inversion formulations",
       {"method", "gamma", "b0", "tf", "kappa", "eta", "delta", "samples"}},
      {"scan", "Deficit map over (gamma2/gamma1, eta) or |S2z| map over (kappa, eta)",
       {"target", "gamma", "gamma2", "b0", "tf", "kappa", "ratios", "etas", "kappas"}},
      {"magic", "Robustness functional Lambda(kappa) and its magic minima",
       {"gamma", "b0", "tf", "eta", "epsilon", "kmin", "kmax", "kstep", "nquad", "format"}},
      {"robust", "Lambda(epsilon) for the pi pulse, spin echo and ansatz protocols",
       {"gamma", "b0", "tf", "eta", "epsilons", "kappas", "nquad", "format"}},
      {"baseline", "Closed-form and quadrature robustness of the pi pulse and spin echo",
       {"epsilons", "nquad"}},
      {"coupled", "Isotropically coupled spins under the corrected field",
       {"gamma", "gamma2", "b0", "tf", "kappa", "eta", "mu", "mus", "samples"}},
      {"bell", "Bell and W state fidelity against protocol duration",
       {"xi", "omega", "tf_xi"}},
      {"all-figures", "Every data file needed to redraw the figures", {"xi", "tf_xi", "nquad"}},
  };
  return subs;
}

std::string flag_of(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return "--" + key;
}

int write_outputs(const ExperimentConfig& cfg, const PipelineResult& result, double seconds,
                  std::ostream& out) {
  RunManifest manifest;
  manifest.tool_version = SPINFLIP_VERSION;
  manifest.subcommand = cfg.subcommand;
  for (const auto& key : config_keys())
    manifest.config.emplace_back(key, config_value_string(cfg, key));
  manifest.wall_seconds = seconds;
  for (const Artifact& a : result.artifacts) {
    const auto path = cfg.out / a.relative;
    write_text_file(path, a.content);
    manifest.files.push_back({a.relative.generic_string(), sha256_hex(a.content), a.content.size()});
  }
  write_text_file(cfg.out / "manifest.json", manifest.to_json());
  for (const auto& line : result.summary) out << line << '\n';
  out << "wrote " << result.artifacts.size() << " files to " << cfg.out.generic_string() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reverse-engineered magnetic fields for single and coupled spins", "spinflip"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SPINFLIP_VERSION);

  // Raw flag text per subcommand; parsed later by the same code as config files.
  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, std::map<std::string, CLI::Option*>> opts;
  std::map<std::string, std::string> config_path;
  for (const Subcommand& sc : subcommands()) {
    CLI::App* sub = app.add_subcommand(sc.name, sc.description);
    sub->add_option("--config", config_path[sc.name], "flat key = value file");
    std::vector<std::string> keys = sc.keys;
    for (const char* common : {"out", "steps", "workers"}) keys.emplace_back(common);
    for (const auto& key : keys) {
      opts[sc.name][key] = sub->add_option(flag_of(key), raw[sc.name][key]);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitConfig;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  ExperimentConfig cfg = defaults_for(name);
  try {
    if (!config_path[name].empty()) apply_config_file(cfg, config_path[name]);
    for (const auto& [key, opt] : opts[name])
      if (opt->count() > 0) set_config_value(cfg, key, raw[name][key]);
    validate(cfg);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitConfig;
  }

  const auto start = std::chrono::steady_clock::now();
  PipelineResult result;
  try {
    result = run_pipeline(cfg);
  } catch (const PreconditionError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    return write_outputs(cfg, result, seconds, out);
  } catch (const std::exception& e) {
    err << "cannot write outputs: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace spinflip::cli
