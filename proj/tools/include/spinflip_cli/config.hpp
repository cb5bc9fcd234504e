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

// Experiment configuration: flat `key = value` files, command-line overrides
// and validation. Every key is addressable both ways; flags spell '_' as '-'.

#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spinflip::cli {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message);
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct ExperimentConfig {
  std::string subcommand;

  // Physical parameters.
  double gamma = 2.0;              // design factor gamma1
  double gamma2 = 1.0;
  std::vector<double> gammas;      // spins integrated by `flip` (default {gamma})
  double b0 = 1.0;
  double tf = 1.0;
  double kappa = 1.0;
  double eta = 0.0;
  double mu = 0.0;
  std::vector<double> mus;
  double xi = 1.0;
  std::optional<double> omega;     // default 2 xi (Bell), 4 xi (W)
  double epsilon = 0.01;
  double delta = 1e-3;             // Madelung demo path: |Delta_n| <= 1 - delta

  // Grids.
  double kmin = 0.05;
  double kmax = 10.0;
  double kstep = 0.02;
  std::vector<double> ratios;
  std::vector<double> etas;
  std::vector<double> kappas;
  std::vector<double> epsilons;
  std::vector<double> tf_xi;

  // Numerics.
  int steps = 4000;
  int nquad = 64;
  int samples = 2001;
  int workers = 0;                 // 0: SPINFLIP_WORKERS or hardware threads

  std::string method = "precession";
  std::string target = "flip";
  std::filesystem::path out = ".";
  std::string format = "auto";     // auto, csv or json

  // Keys set from a file or flag, in canonical spelling.
  std::set<std::string> provided;
};

// Defaults for one subcommand: the reference parameter set it reproduces.
ExperimentConfig defaults_for(std::string_view subcommand);

// All configurable keys in canonical (underscore) spelling.
const std::vector<std::string>& config_keys();

// Parses `value` for `key` into cfg. Throws ConfigError naming the key.
void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);

// Reads a config file over the defaults already in cfg.
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);
ExperimentConfig load_config(const std::filesystem::path& path);

// Physical parameters finite, grids nonempty and increasing, steps >= 16...
void validate(const ExperimentConfig& cfg);

// Value of `key` rendered for the manifest echo.
std::string config_value_string(const ExperimentConfig& cfg, std::string_view key);

// Parses a list: "[a, b, c]", "a, b, c" or "lo:hi:count" (inclusive linspace).
std::vector<double> parse_list(std::string_view key, std::string_view text);

}  // namespace spinflip::cli
